#include "predicate.hpp"

#include <cctype>

namespace rsent {

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Eq: return "=";
    case Cmp::Ge: return ">=";
    case Cmp::Gt: return ">";
  }
  return "=";
}

PredicatePtr make_always() {
  auto p = std::make_shared<Predicate>();
  p->kind = Predicate::Kind::Always;
  return p;
}

namespace {

constexpr int kMaxDepth = 16;

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Hand-rolled recursive descent over the functional syntax.  Kept free of
// exceptions: errors set `failed` and the caller reports one diagnostic.
struct PredParser {
  const std::string& text;
  size_t pos = 0;
  bool failed = false;
  std::string error;

  explicit PredParser(const std::string& t) : text(t) {}

  void fail(const std::string& why) {
    if (!failed) {
      failed = true;
      error = why;
    }
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !is_ident_start(text[pos])) {
      fail("expected identifier");
      return {};
    }
    size_t start = pos;
    while (pos < text.size() && is_ident_char(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }

  std::optional<Cmp> comparator() {
    skip_ws();
    if (pos >= text.size()) return std::nullopt;
    char c = text[pos];
    if (c == '<') {
      ++pos;
      if (pos < text.size() && text[pos] == '=') {
        ++pos;
        return Cmp::Le;
      }
      return Cmp::Lt;
    }
    if (c == '>') {
      ++pos;
      if (pos < text.size() && text[pos] == '=') {
        ++pos;
        return Cmp::Ge;
      }
      return Cmp::Gt;
    }
    if (c == '=') {
      ++pos;
      return Cmp::Eq;
    }
    return std::nullopt;
  }

  std::optional<int> integer() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      fail("expected integer");
      return std::nullopt;
    }
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000) {
        fail("integer too large");
        return std::nullopt;
      }
      ++pos;
    }
    return static_cast<int>(v);
  }

  PredicatePtr parse() {
    auto p = node();
    skip_ws();
    if (!failed && pos != text.size()) fail("trailing characters after predicate");
    return failed ? nullptr : p;
  }

  PredicatePtr node() {
    if (failed) return nullptr;
    std::string head = ident();
    if (failed) return nullptr;

    auto p = std::make_shared<Predicate>();
    if (head == "always") {
      p->kind = Predicate::Kind::Always;
      return p;
    }

    expect('(');
    if (failed) return nullptr;

    if (head == "present") {
      p->kind = Predicate::Kind::Present;
      p->subject = ident();
    } else if (head == "doing") {
      p->kind = Predicate::Kind::Doing;
      p->subject = ident();
      expect(',');
      p->tag = ident();
    } else if (head == "object") {
      p->kind = Predicate::Kind::Object;
      p->tag = ident();
    } else if (head == "count") {
      p->kind = Predicate::Kind::Count;
      auto c = comparator();
      if (!c) {
        fail("expected comparator in count()");
        return nullptr;
      }
      p->cmp = *c;
      auto n = integer();
      if (!n) return nullptr;
      p->count = *n;
    } else if (head == "not") {
      p->kind = Predicate::Kind::Not;
      p->children.push_back(node());
    } else if (head == "all" || head == "any") {
      p->kind = head == "all" ? Predicate::Kind::All : Predicate::Kind::Any;
      p->children.push_back(node());
      while (!failed && eat(',')) p->children.push_back(node());
    } else {
      fail("unknown predicate '" + head + "'");
      return nullptr;
    }

    expect(')');
    return failed ? nullptr : p;
  }
};

void serialize_into(const Predicate& p, std::string& out) {
  switch (p.kind) {
    case Predicate::Kind::Always:
      out += "always";
      return;
    case Predicate::Kind::Present:
      out += "present(" + p.subject + ")";
      return;
    case Predicate::Kind::Doing:
      out += "doing(" + p.subject + ", " + p.tag + ")";
      return;
    case Predicate::Kind::Object:
      out += "object(" + p.tag + ")";
      return;
    case Predicate::Kind::Count:
      out += "count(";
      out += cmp_text(p.cmp);
      out += ' ';
      out += std::to_string(p.count);
      out += ')';
      return;
    case Predicate::Kind::Not:
      out += "not(";
      serialize_into(*p.children[0], out);
      out += ')';
      return;
    case Predicate::Kind::All:
    case Predicate::Kind::Any:
      out += p.kind == Predicate::Kind::All ? "all(" : "any(";
      for (size_t i = 0; i < p.children.size(); ++i) {
        if (i) out += ", ";
        serialize_into(*p.children[i], out);
      }
      out += ')';
      return;
  }
}

bool compare_count(Cmp c, int actual, int wanted) {
  switch (c) {
    case Cmp::Lt: return actual < wanted;
    case Cmp::Le: return actual <= wanted;
    case Cmp::Eq: return actual == wanted;
    case Cmp::Ge: return actual >= wanted;
    case Cmp::Gt: return actual > wanted;
  }
  return false;
}

// Does scene-person `sp` match the subject written in the predicate?
bool subject_matches(const std::string& subject, const ScenePerson& sp, const Roster& roster) {
  if (subject == "any") return true;
  if (subject == "any_child" || subject == "any_adult") {
    const FamilyMember* m = find_member(roster, sp.id);
    if (!m) return false;
    return (m->role == Role::Child) == (subject == "any_child");
  }
  return sp.id == subject;
}

Tri tri_not(Tri t) {
  if (t == Tri::True) return Tri::False;
  if (t == Tri::False) return Tri::True;
  return Tri::Maybe;
}

}  // namespace

PredicatePtr parse_predicate(const std::string& text, int line, std::vector<Diagnostic>& diags) {
  PredParser parser(text);
  PredicatePtr p = parser.parse();
  if (!p) {
    diags.push_back({Severity::Error, line, "bad_predicate", parser.error});
    return nullptr;
  }
  if (predicate_depth(*p) > kMaxDepth) {
    diags.push_back({Severity::Error, line, "predicate_too_deep",
                     "predicate nesting exceeds depth " + std::to_string(kMaxDepth)});
    return nullptr;
  }
  return p;
}

std::string serialize_predicate(const Predicate& p) {
  std::string out;
  serialize_into(p, out);
  return out;
}

bool predicates_equal(const Predicate& a, const Predicate& b) {
  if (a.kind != b.kind || a.subject != b.subject || a.tag != b.tag || a.cmp != b.cmp ||
      a.count != b.count || a.children.size() != b.children.size())
    return false;
  for (size_t i = 0; i < a.children.size(); ++i)
    if (!predicates_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

int predicate_depth(const Predicate& p) {
  int deepest = 0;
  for (const auto& c : p.children) deepest = std::max(deepest, predicate_depth(*c));
  return deepest + 1;
}

bool eval_predicate(const Predicate& p, const Scene& scene, const Roster& roster) {
  switch (p.kind) {
    case Predicate::Kind::Always:
      return true;
    case Predicate::Kind::Present:
      for (const auto& sp : scene.persons)
        if (subject_matches(p.subject, sp, roster)) return true;
      return false;
    case Predicate::Kind::Doing:
      for (const auto& sp : scene.persons)
        if (subject_matches(p.subject, sp, roster) && sp.activities.count(p.tag)) return true;
      return false;
    case Predicate::Kind::Object:
      return scene.objects.count(p.tag) > 0;
    case Predicate::Kind::Count:
      return compare_count(p.cmp, static_cast<int>(scene.persons.size()), p.count);
    case Predicate::Kind::Not:
      return !eval_predicate(*p.children[0], scene, roster);
    case Predicate::Kind::All:
      for (const auto& c : p.children)
        if (!eval_predicate(*c, scene, roster)) return false;
      return true;
    case Predicate::Kind::Any:
      for (const auto& c : p.children)
        if (eval_predicate(*c, scene, roster)) return true;
      return false;
  }
  return false;
}

void collect_refs(const Predicate& p, PredicateRefs& out) {
  switch (p.kind) {
    case Predicate::Kind::Present:
    case Predicate::Kind::Doing:
      out.needs_person = true;
      if (p.subject != "any" && p.subject != "any_child" && p.subject != "any_adult")
        out.member_ids.insert(p.subject);
      if (p.kind == Predicate::Kind::Doing) out.activity_tags.insert(p.tag);
      break;
    case Predicate::Kind::Object:
      out.object_tags.insert(p.tag);
      break;
    case Predicate::Kind::Count:
      out.needs_person = true;
      break;
    case Predicate::Kind::Always:
      break;
    case Predicate::Kind::Not:
    case Predicate::Kind::All:
    case Predicate::Kind::Any:
      for (const auto& c : p.children) collect_refs(*c, out);
      break;
  }
}

// Kleene three-valued evaluation.  The first pass reports an exact person
// count and, for every object tag the plan asks about, whether it is in
// view — so Object and Count atoms resolve exactly, while identity and
// activity atoms only resolve to False when the room is empty.
Tri stage1_eval(const Predicate& p, int person_count, const std::set<std::string>& seen_objects) {
  switch (p.kind) {
    case Predicate::Kind::Always:
      return Tri::True;
    case Predicate::Kind::Present:
      if (person_count == 0) return Tri::False;
      return p.subject == "any" ? Tri::True : Tri::Maybe;
    case Predicate::Kind::Doing:
      return person_count == 0 ? Tri::False : Tri::Maybe;
    case Predicate::Kind::Object:
      return seen_objects.count(p.tag) ? Tri::True : Tri::False;
    case Predicate::Kind::Count:
      return compare_count(p.cmp, person_count, p.count) ? Tri::True : Tri::False;
    case Predicate::Kind::Not:
      return tri_not(stage1_eval(*p.children[0], person_count, seen_objects));
    case Predicate::Kind::All: {
      Tri acc = Tri::True;
      for (const auto& c : p.children) {
        Tri t = stage1_eval(*c, person_count, seen_objects);
        if (t == Tri::False) return Tri::False;
        if (t == Tri::Maybe) acc = Tri::Maybe;
      }
      return acc;
    }
    case Predicate::Kind::Any: {
      Tri acc = Tri::False;
      for (const auto& c : p.children) {
        Tri t = stage1_eval(*c, person_count, seen_objects);
        if (t == Tri::True) return Tri::True;
        if (t == Tri::Maybe) acc = Tri::Maybe;
      }
      return acc;
    }
  }
  return Tri::Maybe;
}

}  // namespace rsent
