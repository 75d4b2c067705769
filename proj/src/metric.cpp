#include "curvagraph/metric.hpp"

#include "curvagraph/classify.hpp"
#include "curvagraph/curvature.hpp"
#include "curvagraph/errors.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace curvagraph {

namespace {

constexpr long kUnbounded = LONG_MAX;

std::string lbl(const CombinatorialMap& map, VertexId v) { return std::to_string(map.label(v)); }

void require_vertex(const CombinatorialMap& map, VertexId v) {
  if (v < 0 || v >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v));
}

void merge_cyclic_duplicates(std::vector<FaceId>& seq) {
  std::vector<FaceId> out;
  for (FaceId f : seq)
    if (out.empty() || out.back() != f) out.push_back(f);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  seq = std::move(out);
}

}  // namespace

std::vector<VertexId> cut_locus(const CombinatorialMap& map, VertexId v0, int horizon) {
  require_vertex(map, v0);
  if (horizon < 0) throw InputError("horizon must be non-negative");
  if (faithful_radius(map, {v0}) < horizon + 1)
    throw PreconditionError("insufficient horizon: ball of radius " + std::to_string(horizon + 1) +
                            " is not faithful");
  const auto d = bfs_distances(map, {v0});
  std::vector<VertexId> out;
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    if (d[v] < 0 || d[v] > horizon) continue;
    bool maximal = true;
    for (VertexId w : map.neighbors(v))
      if (d[w] > d[v]) maximal = false;
    if (maximal) out.push_back(v);
  }
  return out;
}

BoundaryWalk boundary_walk(const CombinatorialMap& map, const FaceTable& faces, const std::vector<int>& dist,
                           int n, VertexId v0) {
  BoundaryWalk bw;
  auto inside = [&](VertexId v) { return dist[v] >= 0 && dist[v] <= n; };
  if (n == 0) {
    bw.sphere_order = {v0};
    for (HalfEdgeId h : map.rotation(v0))
      if (!map.gap_after(h)) bw.faces.push_back(faces.corner_face(map, h));
    merge_cyclic_duplicates(bw.faces);
    return bw;
  }
  VertexId start_v = kNone;
  HalfEdgeId start_a = kNone;
  for (VertexId v = 0; v < map.vertex_count() && start_v == kNone; ++v) {
    if (dist[v] != n) continue;
    for (HalfEdgeId h : map.rotation(v))
      if (inside(map.head(h)) && !inside(map.head(map.rot_next(h)))) {
        start_v = v;
        start_a = h;
        break;
      }
  }
  if (start_v == kNone) {
    // no edge to B_n at some sphere vertex: n = 0 style sweep of a lone vertex
    for (VertexId v = 0; v < map.vertex_count(); ++v)
      if (dist[v] == n && map.degree(v) > 0) {
        bool lone = true;
        for (VertexId w : map.neighbors(v)) lone = lone && !inside(w);
        if (!lone) continue;
        bw.sphere_order = {v};
        for (HalfEdgeId h : map.rotation(v))
          if (!map.gap_after(h)) bw.faces.push_back(faces.corner_face(map, h));
        merge_cyclic_duplicates(bw.faces);
        return bw;
      }
    return bw;
  }
  std::vector<char> seen(map.vertex_count(), 0);
  VertexId v = start_v;
  HalfEdgeId a = start_a;
  const long guard = 2L * map.halfedge_count() + 2;
  for (long step = 0; step < guard; ++step) {
    if (dist[v] == n && !seen[v]) {
      seen[v] = 1;
      bw.sphere_order.push_back(v);
    }
    HalfEdgeId h = a;
    do {
      if (map.gap_after(h)) throw PreconditionError("boundary walk crosses the frontier at " + lbl(map, v));
      bw.faces.push_back(faces.corner_face(map, h));
      h = map.rot_next(h);
    } while (!inside(map.head(h)));
    v = map.head(h);
    a = map.twin(h);
    if (v == start_v && a == start_a) break;
  }
  merge_cyclic_duplicates(bw.faces);
  return bw;
}

SphereEnumeration enumerate_spheres(const CombinatorialMap& map, const FaceTable& faces, VertexId v0, int N) {
  require_vertex(map, v0);
  if (faithful_radius(map, {v0}) <= N)
    throw PreconditionError("sphere S_" + std::to_string(N) + " is not interior");
  SphereEnumeration e;
  e.root = v0;
  e.dist = bfs_distances(map, {v0});
  std::vector<std::vector<VertexId>> spheres(N + 1);
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (e.dist[v] >= 0 && e.dist[v] <= N) spheres[e.dist[v]].push_back(v);

  for (int n = 0; n <= N; ++n) {
    const BoundaryWalk bw = boundary_walk(map, faces, e.dist, n, v0);
    std::vector<VertexId> order = bw.sphere_order;
    bool cyclic = order.size() == spheres[n].size();
    if (!cyclic) {
      std::set<VertexId> have(order.begin(), order.end());
      for (VertexId v : spheres[n])
        if (!have.count(v)) order.push_back(v);
    }
    if (cyclic && order.size() >= 2) {
      std::vector<std::vector<VertexId>> fv;
      for (FaceId f : bw.faces) fv.push_back(faces.face_vertices(map, f));
      for (std::size_t i = 0; i < order.size() && cyclic; ++i) {
        const VertexId a = order[i], b = order[(i + 1) % order.size()];
        bool shared = false;
        for (const auto& vs : fv)
          if (std::binary_search(vs.begin(), vs.end(), a) && std::binary_search(vs.begin(), vs.end(), b)) {
            shared = true;
            break;
          }
        cyclic = shared;
      }
    }
    if (n >= 1 && !e.levels[n - 1].empty()) {
      const VertexId anchor = e.levels[n - 1].front();
      for (std::size_t i = 0; i < order.size(); ++i)
        if (map.has_edge(anchor, order[i])) {
          std::rotate(order.begin(), order.begin() + i, order.end());
          break;
        }
    }
    e.levels.push_back(std::move(order));
    e.cyclic.push_back(cyclic ? 1 : 0);
  }
  return e;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

bool AdmissibilityReport::all_pass() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const AdmissibilityProperty& p) { return p.verdict == Verdict::pass; });
}

AdmissibilityReport check_admissibility(const CombinatorialMap& map, const FaceTable& faces, VertexId v0,
                                        int horizon) {
  require_vertex(map, v0);
  if (horizon < 1) throw InputError("horizon must be positive");
  if (faithful_radius(map, {v0}) < horizon)
    throw PreconditionError("ball of radius " + std::to_string(horizon) + " is not faithful");
  AdmissibilityReport rep;
  rep.root = v0;
  rep.horizon = horizon;
  for (int i = 1; i <= 5; ++i) rep.properties.push_back({i, Verdict::pass, 0, {}});
  auto fail = [&](int i, const std::string& what) {
    auto& p = rep.properties[i - 1];
    if (p.verdict != Verdict::fail) p.detail = what;
    p.verdict = Verdict::fail;
  };
  auto undecided = [&](int i, const std::string& what) {
    auto& p = rep.properties[i - 1];
    if (p.verdict == Verdict::pass) {
      p.verdict = Verdict::undecided;
      p.detail = what;
    }
  };

  const auto d = bfs_distances(map, {v0});
  std::vector<std::vector<VertexId>> S(horizon + 1);
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (d[v] >= 0 && d[v] <= horizon) S[d[v]].push_back(v);

  for (int n = 0; n < horizon; ++n) {
    const std::string at = " (n=" + std::to_string(n) + ")";
    for (auto& p : rep.properties) ++p.levels_checked;

    for (VertexId v : S[n]) {
      bool forward = false;
      for (VertexId w : map.neighbors(v)) forward = forward || d[w] == n + 1;
      if (!forward) fail(1, "vertex " + lbl(map, v) + " has no neighbor in S_{n+1}" + at);
    }
    std::map<VertexId, std::vector<VertexId>> back;  // w in S_{n+1} -> neighbors in S_n
    for (VertexId w : S[n + 1]) {
      std::set<VertexId> nb;
      for (VertexId u : map.neighbors(w))
        if (d[u] == n) nb.insert(u);
      if (nb.size() > 2)
        fail(2, "vertex " + lbl(map, w) + " has " + std::to_string(nb.size()) + " neighbors in S_n" + at);
      back[w] = {nb.begin(), nb.end()};
    }
    for (const auto& [w, nb] : back) {
      if (nb.size() < 2) continue;
      for (std::size_t i = 0; i < nb.size(); ++i) {
        bool other = false;
        for (VertexId x : map.neighbors(nb[i])) other = other || (d[x] == n + 1 && x != w);
        if (!other)
          fail(3, "vertex " + lbl(map, nb[i]) + " shares " + lbl(map, w) + " and has no other forward neighbor" + at);
      }
    }

    const BoundaryWalk bw = boundary_walk(map, faces, d, n, v0);
    // (4)
    std::vector<long> in_ball, outside;
    bool known = true;
    for (FaceId f : bw.faces) {
      long b = 0, o = 0;
      for (VertexId v : faces.face_vertices(map, f)) (d[v] >= 0 && d[v] <= n ? b : o)++;
      const auto& face = faces.faces[f];
      if (face.degree.is_infinite()) o = kUnbounded;
      else if (!face.complete) {
        if (face.degree.is_finite()) o = face.degree.value - b;
        else known = false;
      }
      in_ball.push_back(b);
      outside.push_back(o);
    }
    const std::size_t m = bw.faces.size();
    if (!known) {
      undecided(4, "boundary face of unknown degree" + at);
    } else if (m >= 2 && m % 2 == 0) {
      for (std::size_t phase = 0; phase < 2; ++phase) {
        bool pattern = true;
        for (std::size_t j = 0; j < m && pattern; j += 2)
          pattern = in_ball[(j + phase) % m] == 1 && outside[(j + phase + 1) % m] == 1;
        if (pattern) fail(4, "alternating boundary pattern occurs" + at);
      }
    }
    // (5)
    if (bw.sphere_order.size() != S[n].size()) {
      fail(5, "boundary walk visits " + std::to_string(bw.sphere_order.size()) + " of " +
                  std::to_string(S[n].size()) + " sphere vertices" + at);
    } else if (S[n].size() >= 2) {
      std::vector<std::vector<VertexId>> fv;
      for (FaceId f : bw.faces) fv.push_back(faces.face_vertices(map, f));
      const auto& ord = bw.sphere_order;
      for (std::size_t i = 0; i < ord.size(); ++i) {
        const VertexId a = ord[i], b = ord[(i + 1) % ord.size()];
        bool shared = std::any_of(fv.begin(), fv.end(), [&](const std::vector<VertexId>& vs) {
          return std::binary_search(vs.begin(), vs.end(), a) && std::binary_search(vs.begin(), vs.end(), b);
        });
        if (!shared) {
          fail(5, "succeeding vertices " + lbl(map, a) + ", " + lbl(map, b) + " share no boundary face" + at);
          break;
        }
      }
    }
  }
  return rep;
}

std::vector<VertexId> bigon_interior(const CombinatorialMap& map, const FaceTable& faces,
                                     const std::vector<VertexId>& p1, const std::vector<VertexId>& p2) {
  if (p1.size() != p2.size() || p1.size() < 2 || p1.front() != p2.front() || p1.back() != p2.back())
    throw InputError("not a bigon");
  std::vector<VertexId> cycle(p1.begin(), p1.end());
  for (std::size_t i = p2.size() - 1; i-- > 1;) cycle.push_back(p2[i]);
  std::vector<HalfEdgeId> hs;
  std::set<int> cycle_edges;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const HalfEdgeId h = map.find_halfedge(cycle[i], cycle[(i + 1) % cycle.size()]);
    if (h == kNone) throw InputError("bigon paths are not walks in the map");
    hs.push_back(h);
    cycle_edges.insert(h >> 1);
  }
  auto flood = [&](std::vector<FaceId> seeds, std::vector<char>& mark) {
    std::deque<FaceId> queue;
    for (FaceId f : seeds)
      if (!mark[f]) mark[f] = 1, queue.push_back(f);
    bool open = false;
    while (!queue.empty()) {
      const FaceId f = queue.front();
      queue.pop_front();
      if (!faces.faces[f].complete) open = true;
      for (HalfEdgeId h : faces.faces[f].walk) {
        if (cycle_edges.count(h >> 1)) continue;
        const FaceId g = faces.face_of[map.twin(h)];
        if (!mark[g]) mark[g] = 1, queue.push_back(g);
      }
      if (open) break;
    }
    return open;
  };
  std::vector<FaceId> left, right;
  for (HalfEdgeId h : hs) left.push_back(faces.face_of[h]), right.push_back(faces.face_of[map.twin(h)]);
  std::vector<char> lmark(faces.face_count(), 0), rmark(faces.face_count(), 0);
  const bool lopen = flood(left, lmark);
  std::vector<char>* inside = &lmark;
  if (lopen) {
    flood(right, rmark);
    inside = &rmark;
  } else if (map.is_closed()) {
    const bool ropen = flood(right, rmark);
    const auto lc = std::count(lmark.begin(), lmark.end(), 1), rc = std::count(rmark.begin(), rmark.end(), 1);
    if (!ropen && rc < lc) inside = &rmark;
  }
  std::set<VertexId> on_cycle(cycle.begin(), cycle.end());
  std::set<VertexId> out;
  for (FaceId f = 0; f < faces.face_count(); ++f) {
    if (!(*inside)[f]) continue;
    for (HalfEdgeId h : faces.faces[f].walk)
      if (!on_cycle.count(map.tail(h))) out.insert(map.tail(h));
  }
  return {out.begin(), out.end()};
}

BigonSearch minimal_bigons(const CombinatorialMap& map, const FaceTable& faces, int horizon, VertexId root,
                           long geodesic_cap, bool keep_empty) {
  require_vertex(map, root);
  if (horizon < 1) throw InputError("horizon must be positive");
  BigonSearch s;
  s.horizon = horizon;
  const int F = map.is_closed() ? INT_MAX / 4 : faithful_radius(map, {root});
  const int a = map.is_closed() ? INT_MAX / 4 : F - horizon - 1;
  if (a < 0) throw PreconditionError("faithful region too small for geodesics of length " + std::to_string(horizon));
  const auto d0 = bfs_distances(map, {root});
  std::vector<char> anchor(map.vertex_count(), 0);
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (d0[v] >= 0 && d0[v] <= a) anchor[v] = 1, ++s.anchors;

  for (VertexId x = 0; x < map.vertex_count(); ++x) {
    if (!anchor[x]) continue;
    std::vector<int> d(map.vertex_count(), -1);
    std::vector<long> count(map.vertex_count(), 0);
    std::vector<VertexId> order{x};
    d[x] = 0;
    count[x] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const VertexId v = order[i];
      if (d[v] == horizon) continue;
      for (VertexId w : map.neighbors(v)) {
        if (d[w] < 0) d[w] = d[v] + 1, order.push_back(w);
        if (d[w] == d[v] + 1) count[w] = std::min(count[w] + count[v], geodesic_cap + 1);
      }
    }
    for (VertexId y : order) {
      if (d[y] < 2 || (anchor[y] && y < x)) continue;
      ++s.endpoint_pairs;
      if (count[y] < 2) continue;
      if (count[y] > geodesic_cap) {
        ++s.skipped_pairs;
        continue;
      }
      std::vector<std::vector<VertexId>> paths;
      std::vector<VertexId> cur{y};
      auto extend = [&](auto&& self, VertexId v) -> void {
        if (v == x) {
          paths.emplace_back(cur.rbegin(), cur.rend());
          return;
        }
        for (VertexId u : map.neighbors(v)) {
          if (d[u] != d[v] - 1) continue;
          cur.push_back(u);
          self(self, u);
          cur.pop_back();
        }
      };
      extend(extend, y);
      std::sort(paths.begin(), paths.end());
      for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
          ++s.bigons;
          bool minimal = true;
          for (std::size_t k = 1; k + 1 < paths[i].size() && minimal; ++k) minimal = paths[i][k] != paths[j][k];
          if (!minimal) continue;
          ++s.minimal;
          Bigon b{paths[i], paths[j], bigon_interior(map, faces, paths[i], paths[j])};
          if (!b.interior.empty()) ++s.nonempty;
          if (keep_empty || !b.interior.empty()) s.minimal_bigons.push_back(std::move(b));
        }
    }
  }
  return s;
}

bool GrowthReport::inequality_holds() const {
  return std::all_of(inequality.begin(), inequality.end(), [](char c) { return c != 0; });
}

GrowthReport growth_check(const CombinatorialMap& map, const FaceTable& faces, VertexId v0, int horizon) {
  require_vertex(map, v0);
  if (horizon < 1) throw InputError("horizon must be positive");
  if (!map.is_simple()) throw PreconditionError("map is not simple");
  const int F = faithful_radius(map, {v0});
  if (F < horizon) throw PreconditionError("ball of radius " + std::to_string(horizon) + " is not faithful");
  const int cut_depth = std::min(horizon, F - 1);
  if (cut_depth >= 0 && !cut_locus(map, v0, cut_depth).empty()) throw PreconditionError("cut locus is not empty");

  const CertifiedRegion region = certified_region(map, v0);
  GrowthReport r;
  r.root = v0;
  r.horizon = horizon;
  std::optional<Rational> sup;
  long q = 0;
  bool q_infinite = false;
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    if (!region.has(v)) continue;
    r.p = std::max(r.p, map.degree(v));
    if (auto k = try_vertex_curvature(map, faces, v)) sup = sup ? std::max(*sup, *k) : *k;
    for (int ci : faces.corners_at_vertex[v]) {
      const auto& deg = faces.faces[faces.corners[ci].face].degree;
      if (deg.is_infinite()) q_infinite = true;
      else if (deg.is_finite()) q = std::max(q, deg.value);
    }
  }
  if (!sup) throw PreconditionError("no vertex curvature is determined");
  if (*sup >= 0) throw PreconditionError("vertex curvature is not negative (sup " + to_string(*sup) + ")");
  r.kappa_v = *sup;
  if (!q_infinite) r.q = q;
  r.lower_factor = -2 * r.kappa_v;
  if (r.q) r.lower_factor *= Rational(*r.q, *r.q - 1);

  const auto d = bfs_distances(map, {v0});
  r.sphere_sizes.assign(horizon + 1, 0);
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (d[v] >= 0 && d[v] <= horizon) ++r.sphere_sizes[d[v]];
  long total = 0;
  for (long s : r.sphere_sizes) r.ball_sizes.push_back(total += s);
  for (int n = 1; n <= horizon; ++n)
    r.inequality.push_back(Rational(r.sphere_sizes[n]) >= r.lower_factor * r.ball_sizes[n - 1] ? 1 : 0);
  r.mu_estimate = std::log(static_cast<double>(r.sphere_sizes[horizon])) / horizon;
  r.mu_ratio = std::log(static_cast<double>(r.sphere_sizes[horizon]) / r.sphere_sizes[horizon - 1]);
  r.mu_lower = std::log(1 + to_double(r.lower_factor));
  r.mu_upper = std::log(static_cast<double>(r.p - 1));
  return r;
}

}  // namespace curvagraph
