#include "homemap.hpp"

#include <map>

#include "textutil.hpp"

namespace rsent {

namespace {

// Union-find connectivity check: every room should be reachable from every
// other, otherwise parts of the home can never be patrolled.
bool all_connected(const HomeMap& m) {
  if (m.locations.empty()) return true;
  std::map<std::string, std::string> parent;
  for (const auto& l : m.locations) parent[l] = l;
  auto find = [&](std::string x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (const auto& e : m.edges) parent[find(e.a)] = find(e.b);
  std::string root = find(m.locations.front());
  for (const auto& l : m.locations)
    if (find(l) != root) return false;
  return true;
}

}  // namespace

Parsed<HomeMap> parse_map(const std::string& text) {
  Parsed<HomeMap> result;
  auto& diags = result.diags;
  HomeMap map;

  auto err = [&](int line, const char* code, std::string msg) {
    diags.push_back({Severity::Error, line, code, std::move(msg)});
  };

  auto lines = split_source_lines(text);
  if (lines.empty()) {
    err(0, "syntax_error", "empty map file");
    return result;
  }
  {
    auto tok = split_tokens(lines.front().text);
    if (tok.size() != 2 || tok[0] != "map" || tok[1] != "v1") {
      err(lines.front().number, "syntax_error", "expected 'map v1' header");
      return result;
    }
  }

  // First pass: locations.  Declarations may appear in any order, so edges
  // and the dock are resolved afterwards.
  std::set<std::string> seen_locations;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto tok = split_tokens(lines[i].text);
    if (tok[0] != "location") continue;
    if (tok.size() != 2 || !is_identifier(tok[1])) {
      err(lines[i].number, "syntax_error", "expected 'location <id>'");
      continue;
    }
    if (!seen_locations.insert(tok[1]).second)
      err(lines[i].number, "duplicate_location", "location '" + tok[1] + "' declared twice");
    else
      map.locations.push_back(tok[1]);
  }

  // Second pass: dock and edges.
  int dock_line = 0;
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto tok = split_tokens(lines[i].text);
    if (tok[0] == "location") continue;
    if (tok[0] == "dock" && tok.size() == 2 && is_identifier(tok[1])) {
      if (dock_line) {
        err(lines[i].number, "duplicate_dock", "dock declared twice");
        continue;
      }
      dock_line = lines[i].number;
      map.dock = tok[1];
      if (!seen_locations.count(tok[1]))
        err(lines[i].number, "unknown_location", "dock location '" + tok[1] + "' not declared");
    } else if (tok[0] == "edge" && tok.size() == 4 && is_identifier(tok[1]) &&
               is_identifier(tok[2])) {
      const std::string& a = tok[1];
      const std::string& b = tok[2];
      auto minutes = parse_int(tok[3], 1, 100000);
      if (!minutes) {
        err(lines[i].number, "bad_edge_weight", "edge time must be an integer >= 1");
        continue;
      }
      if (a == b) {
        err(lines[i].number, "self_edge", "edge from '" + a + "' to itself");
        continue;
      }
      bool endpoints_ok = true;
      for (const auto& end : {a, b}) {
        if (!seen_locations.count(end)) {
          err(lines[i].number, "unknown_edge_endpoint",
              "edge endpoint '" + end + "' not declared");
          endpoints_ok = false;
        }
      }
      if (!endpoints_ok) continue;
      if (!seen_edges.insert(edge_key(a, b)).second) {
        err(lines[i].number, "duplicate_edge",
            "edge between '" + a + "' and '" + b + "' declared twice");
        continue;
      }
      map.edges.push_back({a, b, *minutes});
    } else {
      err(lines[i].number, "syntax_error", "unrecognized map line: " + lines[i].text);
    }
  }

  if (!dock_line) err(0, "missing_dock", "map declares no dock");
  if (!all_connected(map))
    diags.push_back({Severity::Warning, 0, "disconnected", "map is not fully connected"});

  sort_diagnostics(diags);
  if (!has_errors(diags)) result.value = std::move(map);
  return result;
}

std::string serialize_map(const HomeMap& m) {
  std::string out = "map v1\n";
  for (const auto& l : m.locations) out += "location " + l + "\n";
  out += "dock " + m.dock + "\n";
  for (const auto& e : m.edges)
    out += "edge " + e.a + " " + e.b + " " + std::to_string(e.minutes) + "\n";
  return out;
}

}  // namespace rsent
