#pragma once

#include "curvagraph/graph_io.hpp"
#include "curvagraph/map.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace testing {

using namespace curvagraph;

inline CombinatorialMap cube_map() {
  return parse_map(
      "v 0: 1 4 3\nv 1: 2 5 0\nv 2: 6 1 3\nv 3: 0 7 2\n"
      "v 4: 0 5 7\nv 5: 1 6 4\nv 6: 5 2 7\nv 7: 4 6 3\n");
}

inline CombinatorialMap path3() { return parse_map("v 0: 1\nv 1: 0 2\nv 2: 1\n"); }

// Connected set of the requested size grown from a random seed inside `allowed`
// by adding random boundary vertices; may come out smaller when the
// component is small.
inline std::vector<VertexId> random_connected_set(const CombinatorialMap& map, const std::vector<char>& allowed,
                                                  int size, std::mt19937_64& rng) {
  std::vector<VertexId> pool;
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (allowed[v]) pool.push_back(v);
  std::vector<VertexId> set{pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]};
  std::vector<char> in(map.vertex_count(), 0);
  in[set[0]] = 1;
  while (static_cast<int>(set.size()) < size) {
    std::vector<VertexId> frontier;
    for (VertexId v : set)
      for (VertexId w : map.neighbors(v))
        if (allowed[w] && !in[w]) frontier.push_back(w);
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    if (frontier.empty()) break;
    const VertexId w = frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng)];
    in[w] = 1;
    set.push_back(w);
  }
  return set;
}

inline std::vector<char> all_vertices(const CombinatorialMap& map) { return std::vector<char>(map.vertex_count(), 1); }

inline std::vector<VertexId> ball_vertices(const CombinatorialMap& map, VertexId root, int r) {
  const auto d = bfs_distances(map, {root});
  std::vector<VertexId> out;
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (d[v] >= 0 && d[v] <= r) out.push_back(v);
  return out;
}

inline std::vector<VertexId> interior_vertices(const CombinatorialMap& map) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (!map.is_frontier(v)) out.push_back(v);
  return out;
}

}  // namespace testing
