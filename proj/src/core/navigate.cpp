#include "navigate.hpp"

#include <limits>
#include <map>

namespace rsent {

std::optional<Route> navigate(const HomeMap& map, const std::string& from, const std::string& to,
                              const std::set<std::pair<std::string, std::string>>& closed) {
  if (!map.has_location(from) || !map.has_location(to)) return std::nullopt;
  if (from == to) return Route{{from}, 0};

  std::map<std::string, std::vector<std::pair<std::string, int>>> adj;
  for (const auto& e : map.edges) {
    if (closed.count(edge_key(e.a, e.b))) continue;
    adj[e.a].emplace_back(e.b, e.minutes);
    adj[e.b].emplace_back(e.a, e.minutes);
  }

  // Distance of every room *to the target*, then a greedy walk from the
  // start that always steps to the smallest-named neighbor still on some
  // fastest path.  That picks exactly the lexicographically smallest of the
  // minimum-time hop sequences without materializing them.
  constexpr long kInf = std::numeric_limits<long>::max();
  std::map<std::string, long> dist;
  for (const auto& l : map.locations) dist[l] = kInf;
  dist[to] = 0;
  std::set<std::pair<long, std::string>> frontier{{0, to}};
  while (!frontier.empty()) {
    auto [d, u] = *frontier.begin();
    frontier.erase(frontier.begin());
    if (d > dist[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        frontier.erase({dist[v], v});
        dist[v] = d + w;
        frontier.insert({dist[v], v});
      }
    }
  }
  if (dist[from] == kInf) return std::nullopt;

  Route route;
  route.minutes = static_cast<int>(dist[from]);
  route.hops.push_back(from);
  std::string cur = from;
  while (cur != to) {
    std::string best;
    for (const auto& [v, w] : adj[cur]) {
      if (dist[v] == kInf || dist[cur] != w + dist[v]) continue;
      if (best.empty() || v < best) best = v;
    }
    route.hops.push_back(best);
    cur = best;
  }
  return route;
}

}  // namespace rsent
