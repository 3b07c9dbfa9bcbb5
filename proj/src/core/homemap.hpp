#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diagnostics.hpp"

namespace rsent {

// Undirected connection between two rooms; traversal takes `minutes` (>= 1).
struct MapEdge {
  std::string a;
  std::string b;
  int minutes = 1;
};

// Unordered pair used as a set key for edges and door-closed bookkeeping.
inline std::pair<std::string, std::string> edge_key(const std::string& a, const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

struct HomeMap {
  std::vector<std::string> locations;  // declaration order
  std::vector<MapEdge> edges;          // declaration order
  std::string dock;                    // charging-station location

  bool has_location(const std::string& id) const {
    for (const auto& l : locations)
      if (l == id) return true;
    return false;
  }
};

// Text format, one declaration per line ('#' comments allowed):
//   map v1
//   location <id>
//   dock <id>
//   edge <a> <b> <minutes>
Parsed<HomeMap> parse_map(const std::string& text);

std::string serialize_map(const HomeMap& m);

}  // namespace rsent
