#include "curvagraph/generators.hpp"

#include "curvagraph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

namespace curvagraph {

namespace {

constexpr std::size_t kBuilderBudget = 4'000'000;

// Disk of the {p,q} tiling grown one ring of faces at a time. fan[v] lists
// the neighbors of v counterclockwise; for a boundary vertex c_i of the
// counterclockwise boundary cycle the fan runs c_{i+1}, ..., c_{i-1} through
// the interior and the missing neighbors belong after c_{i-1}.
struct DiskBuilder {
  int p;
  long q;
  std::vector<std::vector<VertexId>> fan;
  std::vector<VertexId> boundary;

  VertexId fresh() {
    fan.emplace_back();
    if (fan.size() > kBuilderBudget) throw InputError("tiling ball too large for the vertex budget");
    return static_cast<VertexId>(fan.size() - 1);
  }

  void grow() {
    const int m = static_cast<int>(boundary.size());
    std::vector<int> slot;
    for (int i = 0; i < m; ++i) {
      const int k = p - static_cast<int>(fan[boundary[i]].size());
      if (k < 0) throw InputError("layer completion overfilled a vertex");
      for (int t = 0; t < k; ++t) slot.push_back(i);
    }
    const int K = static_cast<int>(slot.size());
    if (K == 0) throw InputError("layer completion closed up; parameters are not non-positively curved");

    std::vector<long> far(K);
    for (int j = 0; j < K; ++j) {
      const int a = slot[j], b = slot[(j + 1) % K];
      long stretch = (b - a + m) % m;
      if (j == K - 1 && a == b && m > 1) stretch = m;
      far[j] = q - 2 - stretch;
      if (far[j] < 0) throw InputError("layer completion needs a chord; unsupported parameters");
    }
    int j0 = 0;
    while (j0 < K && far[(j0 - 1 + K) % K] == 0) ++j0;
    if (j0 == K) throw InputError("layer completion degenerated to a single vertex");

    std::vector<VertexId> next_boundary;
    std::vector<VertexId> target(K);
    std::vector<std::vector<VertexId>> ups;
    std::vector<int> up_index;  // per new boundary position, index into ups or -1
    VertexId run = kNone;
    for (int s = 0; s < K; ++s) {
      const int j = (j0 + s) % K;
      if (s == 0 || far[(j - 1 + K) % K] != 0) {
        run = fresh();
        next_boundary.push_back(run);
        up_index.push_back(static_cast<int>(ups.size()));
        ups.emplace_back();
      }
      target[j] = run;
      ups.back().push_back(boundary[slot[j]]);
      for (long t = 1; t < far[j]; ++t) {
        next_boundary.push_back(fresh());
        up_index.push_back(-1);
      }
    }
    for (int j = 0; j < K; ++j) fan[boundary[slot[j]]].push_back(target[j]);
    const int M = static_cast<int>(next_boundary.size());
    for (int t = 0; t < M; ++t) {
      auto& f = fan[next_boundary[t]];
      f.push_back(next_boundary[(t + 1) % M]);
      if (up_index[t] >= 0) {
        const auto& u = ups[up_index[t]];
        f.insert(f.end(), u.rbegin(), u.rend());
      }
      f.push_back(next_boundary[(t - 1 + M) % M]);
    }
    boundary = std::move(next_boundary);
  }

};

CombinatorialMap map_from_fans(const std::vector<std::vector<VertexId>>& fan,
                               const std::vector<VertexId>& open_after_last) {
  CombinatorialMap map;
  const int n = static_cast<int>(fan.size());
  for (int v = 0; v < n; ++v) map.add_vertex(v);
  std::vector<std::vector<HalfEdgeId>> he(n);
  for (int v = 0; v < n; ++v) he[v].assign(fan[v].size(), kNone);
  for (int v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < fan[v].size(); ++i) {
      if (he[v][i] != kNone) continue;
      const VertexId w = fan[v][i];
      auto it = std::find(fan[w].begin(), fan[w].end(), v);
      if (it == fan[w].end()) throw InputError("asymmetric adjacency in generated tiling");
      const HalfEdgeId h = map.add_edge(v, w);
      he[v][i] = h;
      he[w][it - fan[w].begin()] = map.twin(h);
    }
  }
  for (int v = 0; v < n; ++v) map.set_rotation(v, he[v]);
  for (VertexId v : open_after_last)
    if (!he[v].empty()) map.set_gap_after(he[v].back(), true);
  return map;
}

std::vector<VertexId> bfs_order(const CombinatorialMap& map, VertexId root, int radius) {
  std::vector<int> dist(map.vertex_count(), -1);
  std::vector<VertexId> order{root};
  dist[root] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const VertexId v = order[i];
    if (dist[v] == radius) continue;
    for (VertexId w : map.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        order.push_back(w);
      }
  }
  return order;
}

}  // namespace

CombinatorialMap pq_ball(int p, long q, int radius) {
  if (radius < 1) throw InputError("radius must be at least 1");
  if (q == 0) return regular_tree_ball(p, radius);
  if (p < 3 || q < 3) throw InputError("tiling parameters need p >= 3 and q >= 3");
  DiskBuilder b{p, q, {}, {}};
  const VertexId center = b.fresh();
  b.boundary = {center};
  while (true) {
    b.grow();
    CombinatorialMap partial = map_from_fans(b.fan, {});
    const auto dist = bfs_distances(partial, {center});
    int closest = INT32_MAX;
    for (VertexId v : b.boundary) closest = std::min(closest, dist[v]);
    if (closest > radius) {
      CombinatorialMap full = map_from_fans(b.fan, b.boundary);
      auto order = bfs_order(full, center, radius);
      CombinatorialMap out = induced_submap(full, order, true);
      // every vertex at the outer sphere is frontier, even if no neighbor is missing
      const auto d = bfs_distances(out, {0});
      for (VertexId v = 0; v < out.vertex_count(); ++v)
        if (d[v] == radius && !out.is_frontier(v)) out.mark_frontier(v);
      out.set_uniform_hint(FaceDegree::finite(q));
      out.validate();
      return out;
    }
  }
}

CombinatorialMap radial_tree_ball(int base, int slope, int radius) {
  if (radius < 1) throw InputError("radius must be at least 1");
  if (base < 2 || slope < 0) throw InputError("unsupported tree parameters");
  const RadialProfile profile{base, slope};
  CombinatorialMap map;
  map.add_vertex(0);
  std::vector<int> depth{0};
  std::vector<HalfEdgeId> parent_edge{kNone};
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    if (depth[v] == radius) {
      if (parent_edge[v] != kNone) map.set_gap_after(parent_edge[v], true);
      continue;
    }
    const int children = profile.branching(depth[v]);
    for (int c = 0; c < children; ++c) {
      const VertexId w = map.add_vertex();
      const HalfEdgeId h = map.add_edge(v, w);
      depth.push_back(depth[v] + 1);
      parent_edge.push_back(map.twin(h));
    }
  }
  map.set_uniform_hint(FaceDegree::infinite());
  map.validate();
  return map;
}

CombinatorialMap regular_tree_ball(int p, int radius) { return radial_tree_ball(p, 0, radius); }

CombinatorialMap line_ball(int radius) {
  if (radius < 1) throw InputError("radius must be at least 1");
  CombinatorialMap map;
  auto id = [](int x) { return x == 0 ? 0 : (x > 0 ? 2 * x - 1 : -2 * x); };
  for (int i = 0; i <= 2 * radius; ++i) map.add_vertex(i);
  std::vector<std::vector<HalfEdgeId>> rot(2 * radius + 1);
  std::vector<HalfEdgeId> left(2 * radius + 1, kNone), right(2 * radius + 1, kNone);
  for (int x = -radius; x < radius; ++x) {
    const HalfEdgeId h = map.add_edge(id(x), id(x + 1));
    right[id(x)] = h;
    left[id(x + 1)] = map.twin(h);
  }
  for (int x = -radius; x <= radius; ++x) {
    std::vector<HalfEdgeId> order;
    if (left[id(x)] != kNone) order.push_back(left[id(x)]);
    if (right[id(x)] != kNone) order.push_back(right[id(x)]);
    map.set_rotation(id(x), order);
    if (std::abs(x) == radius) map.set_gap_after(order.front(), true);
  }
  map.set_uniform_hint(FaceDegree::infinite());
  map.validate();
  return map;
}

CombinatorialMap map_from_drawing(const std::vector<std::pair<double, double>>& coords,
                                  const std::vector<std::pair<int, int>>& edges,
                                  const std::vector<int>& open) {
  const int n = static_cast<int>(coords.size());
  CombinatorialMap map;
  for (int v = 0; v < n; ++v) map.add_vertex(v);
  for (auto [a, b] : edges) map.add_edge(a, b);
  auto angle = [&](VertexId from, VertexId to) {
    return std::atan2(coords[to].second - coords[from].second, coords[to].first - coords[from].first);
  };
  for (int v = 0; v < n; ++v) {
    auto rot = map.rotation(v);
    std::sort(rot.begin(), rot.end(), [&](HalfEdgeId x, HalfEdgeId y) {
      return angle(v, map.head(x)) < angle(v, map.head(y));
    });
    map.set_rotation(v, rot);
  }
  constexpr double two_pi = 2 * std::numbers::pi;
  for (int v : open) {
    const auto rot = map.rotation(v);
    if (rot.empty()) {
      map.mark_frontier(v);
      continue;
    }
    const double out = std::atan2(coords[v].second, coords[v].first);
    for (std::size_t i = 0; i < rot.size(); ++i) {
      const double a = angle(v, map.head(rot[i]));
      const double b = angle(v, map.head(rot[(i + 1) % rot.size()]));
      double width = std::fmod(b - a + 2 * two_pi, two_pi);
      if (rot.size() == 1 || width == 0) width = two_pi;
      if (std::fmod(out - a + 2 * two_pi, two_pi) < width) {
        map.set_gap_after(rot[i], true);
        break;
      }
    }
  }
  map.validate();
  return map;
}

CombinatorialMap platonic_solid(const std::string& name) {
  if (name == "tetrahedron")
    return map_from_drawing({{0, 2}, {-1.7, -1}, {1.7, -1}, {0, 0}},
                            {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}, {3, 2}});
  if (name == "cube")
    return map_from_drawing({{-2, -2}, {2, -2}, {2, 2}, {-2, 2}, {-1, -1}, {1, -1}, {1, 1}, {-1, 1}},
                            {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4},
                             {0, 4}, {1, 5}, {2, 6}, {3, 7}});
  if (name == "octahedron") return octahedron_hub(0);
  throw InputError("unknown platonic solid '" + name + "'");
}

CombinatorialMap octahedron_hub(int ray) {
  if (ray < 0) throw InputError("ray length must be non-negative");
  std::vector<std::pair<double, double>> xy{{-2.6, -1.5}, {2.6, -1.5}, {0.87, 0.5}, {-0.87, 0.5},
                                            {0, 3}, {0, -1}};
  std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  for (int i = 0; i < 4; ++i) {
    edges.emplace_back(4, i);
    edges.emplace_back(5, i);
  }
  const double step = 0.45 / (ray + 1);
  for (int hub : {4, 5}) {
    int prev = hub;
    for (int k = 1; k <= ray; ++k) {
      const int v = static_cast<int>(xy.size());
      xy.emplace_back(0, hub == 4 ? 3.0 + k : -1.0 - step * k);
      edges.emplace_back(prev, v);
      prev = v;
    }
  }
  return map_from_drawing(xy, edges);
}

CombinatorialMap vertex_pattern_patch(const std::vector<long>& face_degrees) {
  const int k = static_cast<int>(face_degrees.size());
  if (k < 1) throw InputError("pattern needs at least one face");
  for (long l : face_degrees)
    if (l < 3) throw InputError("pattern face degrees must be at least 3");
  if (k < 3)
    for (long l : face_degrees)
      if (l == 3) throw InputError("triangle faces need at least three faces at the vertex");
  std::vector<std::pair<double, double>> xy{{0, 0}};
  std::vector<std::pair<int, int>> edges;
  const double two_pi = 2 * std::numbers::pi;
  for (int i = 0; i < k; ++i) {
    const double t = two_pi * i / k;
    xy.emplace_back(std::cos(t), std::sin(t));
    edges.emplace_back(0, i + 1);
  }
  std::vector<int> open;
  for (int i = 0; i < k; ++i) open.push_back(i + 1);
  for (int i = 0; i < k; ++i) {
    const int a = i + 1, b = (i + 1) % k + 1;
    const long inner = face_degrees[i] - 3;
    if (inner == 0) {
      edges.emplace_back(a, b);
      continue;
    }
    int prev = a;
    for (long j = 1; j <= inner; ++j) {
      const double t = two_pi * (i + static_cast<double>(j) / (inner + 1)) / k;
      const int v = static_cast<int>(xy.size());
      xy.emplace_back(2 * std::cos(t), 2 * std::sin(t));
      open.push_back(v);
      edges.emplace_back(prev, v);
      prev = v;
    }
    edges.emplace_back(prev, b);
  }
  return map_from_drawing(xy, edges, open);
}

GeneratorSpec parse_generator(const std::string& text, int radius) {
  GeneratorSpec spec;
  spec.radius = radius;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::vector<std::string> args;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) args.push_back(item);
  }
  auto as_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InputError("bad generator parameter '" + s + "' in '" + text + "'");
    }
  };
  if (kind == "pq") {
    if (args.size() != 2) throw InputError("pq generator needs 'pq:<p>,<q>'");
    spec.kind = GeneratorSpec::Kind::pq_tessellation;
    spec.p = as_int(args[0]);
    spec.q = args[1] == "inf" ? 0 : as_int(args[1]);
    if (spec.q == 0) spec.kind = GeneratorSpec::Kind::regular_tree;
  } else if (kind == "tree") {
    if (args.size() != 1) throw InputError("tree generator needs 'tree:<p>'");
    spec.kind = GeneratorSpec::Kind::regular_tree;
    spec.p = as_int(args[0]);
  } else if (kind == "line" && args.empty()) {
    spec.kind = GeneratorSpec::Kind::line;
  } else if (kind == "platonic" && args.size() == 1) {
    spec.kind = GeneratorSpec::Kind::platonic_solid;
    spec.name = args[0];
  } else if (kind == "octa-hub" && args.empty()) {
    spec.kind = GeneratorSpec::Kind::octahedron_hub;
  } else if (kind == "radial-tree" && (args.empty() || args.size() == 2)) {
    spec.kind = GeneratorSpec::Kind::radial_tree;
    spec.p = args.empty() ? 3 : as_int(args[0]);
    spec.slope = args.empty() ? 1 : as_int(args[1]);
  } else {
    throw InputError("unknown generator '" + text + "'");
  }
  return spec;
}

std::string describe(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::pq_tessellation:
      return "pq:" + std::to_string(spec.p) + "," + std::to_string(spec.q);
    case GeneratorSpec::Kind::regular_tree: return "tree:" + std::to_string(spec.p);
    case GeneratorSpec::Kind::platonic_solid: return "platonic:" + spec.name;
    case GeneratorSpec::Kind::octahedron_hub: return "octa-hub";
    case GeneratorSpec::Kind::line: return "line";
    case GeneratorSpec::Kind::radial_tree:
      return "radial-tree:" + std::to_string(spec.p) + "," + std::to_string(spec.slope);
  }
  return "?";
}

CombinatorialMap generate(const GeneratorSpec& spec) {
  if (spec.radius < 1 && spec.kind != GeneratorSpec::Kind::platonic_solid)
    throw InputError("radius must be at least 1");
  switch (spec.kind) {
    case GeneratorSpec::Kind::pq_tessellation: return pq_ball(spec.p, spec.q, spec.radius);
    case GeneratorSpec::Kind::regular_tree: return regular_tree_ball(spec.p, spec.radius);
    case GeneratorSpec::Kind::platonic_solid: return platonic_solid(spec.name);
    case GeneratorSpec::Kind::octahedron_hub: return octahedron_hub(spec.radius);
    case GeneratorSpec::Kind::line: return line_ball(spec.radius);
    case GeneratorSpec::Kind::radial_tree: return radial_tree_ball(spec.p, spec.slope, spec.radius);
  }
  throw InputError("unsupported generator");
}

}  // namespace curvagraph
