#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "domain.hpp"

namespace rsent {

enum class Cmp { Lt, Le, Eq, Ge, Gt };

const char* cmp_text(Cmp c);

// Condition tree attached to a reminder.  Atoms talk about one observed
// scene; all/any/not combine them.  Trees are immutable once built and
// shared by pointer.
struct Predicate;
using PredicatePtr = std::shared_ptr<const Predicate>;

struct Predicate {
  enum class Kind { Present, Doing, Object, Count, Always, All, Any, Not };

  Kind kind = Kind::Always;

  // Present/Doing: a member id or one of the group subjects
  // "any" / "any_child" / "any_adult".
  std::string subject;
  // Doing: activity tag.  Object: object tag.
  std::string tag;
  // Count: persons-in-scene comparison.
  Cmp cmp = Cmp::Eq;
  int count = 0;

  std::vector<PredicatePtr> children;
};

PredicatePtr make_always();

// Parses the functional syntax, e.g.
//   all(doing(kidA, homework), not(present(any_adult)), count(>= 2))
// Findings are appended to `diags` with the given source line; returns null
// when the text is not usable.
PredicatePtr parse_predicate(const std::string& text, int line, std::vector<Diagnostic>& diags);

std::string serialize_predicate(const Predicate& p);

bool predicates_equal(const Predicate& a, const Predicate& b);

int predicate_depth(const Predicate& p);

// Truth of `p` against one scene.  Group subjects quantify over the people
// in the scene ("any_child" = some child present satisfies the atom).
bool eval_predicate(const Predicate& p, const Scene& scene, const Roster& roster);

// Everything a predicate tree mentions; used to decide what perception has
// to look for and to lint plans against the map/roster.
struct PredicateRefs {
  std::set<std::string> member_ids;     // explicit member subjects
  std::set<std::string> activity_tags;  // doing(...) tags
  std::set<std::string> object_tags;    // object(...) tags
  bool needs_person = false;            // any present/doing/count atom
};

void collect_refs(const Predicate& p, PredicateRefs& out);

// Three-valued verdict computed from the cheap first sensing pass, which
// only yields a person count and which of the queried object tags are in
// view.  Maybe means "full interpretation could still make this true".
enum class Tri { False, Maybe, True };

Tri stage1_eval(const Predicate& p, int person_count, const std::set<std::string>& seen_objects);

}  // namespace rsent
