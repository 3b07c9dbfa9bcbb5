#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homemap.hpp"

namespace rsent {

struct Route {
  std::vector<std::string> hops;  // from .. to inclusive
  int minutes = 0;
};

// Fastest open path between two rooms.  Among equally fast paths the
// lexicographically smallest hop sequence wins, so route choice is a pure
// function of the inputs.  `closed` uses edge_key pairs.  No path (or an
// unknown endpoint) -> nullopt; from == to -> a zero-minute route.
std::optional<Route> navigate(const HomeMap& map, const std::string& from, const std::string& to,
                              const std::set<std::pair<std::string, std::string>>& closed);

}  // namespace rsent
