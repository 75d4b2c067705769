#include "curvagraph/isoperimetry.hpp"

#include "curvagraph/curvature.hpp"
#include "curvagraph/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace curvagraph {

namespace {

// Smallest ratio num/den seen so far, compared exactly in integers.
struct BestRatio {
  long num = 1, den = 0;
  std::vector<VertexId> witness;

  void offer(long n, long d, const std::vector<VertexId>& W) {
    if (d <= 0) return;
    if (den == 0 || static_cast<__int128>(n) * den < static_cast<__int128>(num) * d) {
      num = n;
      den = d;
      witness = W;
    }
  }
  Rational value() const { return den == 0 ? Rational(0) : Rational(num, den); }
};

using Adjacency = std::vector<std::vector<VertexId>>;

Adjacency adjacency(const CombinatorialMap& map) {
  Adjacency adj(map.vertex_count());
  for (VertexId v = 0; v < map.vertex_count(); ++v) adj[v] = map.neighbors(v);
  return adj;
}

struct Scratch {
  std::vector<char> in_w;
  std::vector<int> stamp;
  int epoch = 0;
  std::deque<VertexId> queue;

  explicit Scratch(int n) : in_w(n, 0), stamp(n, 0) {}
};

SetMeasure measure_marked(const CombinatorialMap& map, const std::vector<VertexId>& W, const std::vector<char>& in_w) {
  SetMeasure m;
  m.size = static_cast<long>(W.size());
  for (VertexId v : W) {
    m.volume += map.degree(v);
    const HalfEdgeId first = map.first_halfedge(v);
    if (first == kNone) continue;
    HalfEdgeId h = first;
    do {
      if (!in_w[map.head(h)]) ++m.boundary;
      h = map.rot_next(h);
    } while (h != first);
  }
  return m;
}

bool one_ended(const FaceTable& faces) {
  return std::all_of(faces.faces.begin(), faces.faces.end(),
                     [](const FaceOrbit& f) { return f.degree.is_finite(); });
}

int components_marked(const CombinatorialMap& map, const Adjacency& adj, bool merge_exterior,
                      const std::vector<VertexId>& W, Scratch& s) {
  const int epoch_start = ++s.epoch;
  int holes = 0, exterior = 0;
  for (VertexId w : W)
    for (VertexId seed : adj[w]) {
      if (s.in_w[seed] || s.stamp[seed] >= epoch_start) continue;
      const int mark = ++s.epoch;
      s.queue.assign(1, seed);
      s.stamp[seed] = mark;
      bool open = false;
      while (!s.queue.empty()) {
        const VertexId v = s.queue.front();
        s.queue.pop_front();
        if (map.is_frontier(v)) {
          open = true;
          if (merge_exterior) break;
        }
        for (VertexId u : adj[v])
          if (!s.in_w[u] && s.stamp[u] < epoch_start) {
            s.stamp[u] = mark;
            s.queue.push_back(u);
          }
      }
      s.queue.clear();
      (open ? exterior : holes)++;
    }
  if (merge_exterior && exterior > 0) exterior = 1;
  return holes + exterior;
}

std::vector<VertexId> sorted_unique(std::vector<VertexId> U) {
  std::sort(U.begin(), U.end());
  U.erase(std::unique(U.begin(), U.end()), U.end());
  return U;
}

void require_interior(const CombinatorialMap& map, const std::vector<VertexId>& U) {
  if (U.empty()) throw InputError("empty region");
  for (VertexId v : U) {
    if (v < 0 || v >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v));
    if (map.is_frontier(v))
      throw PreconditionError("region contains frontier vertex " + std::to_string(map.label(v)));
  }
}

// Infimum and supremum of the face degrees at the corners of U; nullopt is infinity.
void face_degree_range(const CombinatorialMap& map, const FaceTable& faces, const std::vector<VertexId>& U,
                       std::optional<long>& q_inf, std::optional<long>& q_sup) {
  q_inf.reset();
  long sup = 0;
  bool sup_infinite = false;
  for (VertexId v : U)
    for (int ci : faces.corners_at_vertex[v]) {
      const FaceDegree& d = faces.faces[faces.corners[ci].face].degree;
      if (!d.known())
        throw PreconditionError("face degree at vertex " + std::to_string(map.label(v)) + " is not determined");
      if (d.is_infinite()) {
        sup_infinite = true;
        continue;
      }
      q_inf = q_inf ? std::min(*q_inf, d.value) : d.value;
      sup = std::max(sup, d.value);
    }
  q_sup.reset();
  if (!sup_infinite) q_sup = sup;
}

Rational two_q_over(std::optional<long> q) { return q ? Rational(2 * *q, *q - 2) : Rational(2); }

}  // namespace

long for_each_connected_set(const CombinatorialMap& map, const std::vector<VertexId>& U_in, int k,
                            const std::function<void(const std::vector<VertexId>&)>& visit, long cap) {
  if (k < 1) throw InputError("set size bound must be positive");
  const auto U = sorted_unique(U_in);
  std::vector<char> in_u(map.vertex_count(), 0);
  for (VertexId v : U) {
    if (v < 0 || v >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v));
    in_u[v] = 1;
  }
  const Adjacency adj = adjacency(map);
  std::vector<int> touch(map.vertex_count(), 0);  // membership in the closed neighborhood of the set
  std::vector<int> seen(map.vertex_count(), 0);
  int seen_epoch = 0;
  std::vector<VertexId> sub;
  long count = 0;
  VertexId anchor = 0;

  auto cover = [&](VertexId w, int delta) {
    touch[w] += delta;
    for (VertexId u : adj[w])
      if (u != w) touch[u] += delta;
  };
  auto extend = [&](auto&& self, std::vector<VertexId> ext) -> void {
    if (++count > cap) throw PreconditionError("more than " + std::to_string(cap) + " connected sets");
    visit(sub);
    if (static_cast<int>(sub.size()) == k) return;
    while (!ext.empty()) {
      const VertexId w = ext.back();
      ext.pop_back();
      std::vector<VertexId> next = ext;
      ++seen_epoch;
      for (VertexId u : next) seen[u] = seen_epoch;
      for (VertexId u : adj[w])
        if (in_u[u] && u > anchor && touch[u] == 0 && seen[u] != seen_epoch) {
          seen[u] = seen_epoch;
          next.push_back(u);
        }
      sub.push_back(w);
      cover(w, +1);
      self(self, std::move(next));
      cover(w, -1);
      sub.pop_back();
    }
  };
  for (VertexId v : U) {
    anchor = v;
    sub.assign(1, v);
    cover(v, +1);
    std::vector<VertexId> ext;
    ++seen_epoch;
    for (VertexId u : adj[v])
      if (in_u[u] && u > v && seen[u] != seen_epoch) {
        seen[u] = seen_epoch;
        ext.push_back(u);
      }
    extend(extend, std::move(ext));
    cover(v, -1);
  }
  return count;
}

SetMeasure measure_set(const CombinatorialMap& map, const std::vector<VertexId>& W) {
  std::vector<char> in_w(map.vertex_count(), 0);
  for (VertexId v : W) in_w[v] = 1;
  return measure_marked(map, sorted_unique(W), in_w);
}

CheegerUpper cheeger_bruteforce(const CombinatorialMap& map, const std::vector<VertexId>& U, int k, long cap) {
  require_interior(map, U);
  CheegerUpper out;
  out.k = k;
  out.region = sorted_unique(U);
  std::vector<char> in_w(map.vertex_count(), 0);
  BestRatio alpha, beta;
  out.sets = for_each_connected_set(
      map, out.region, k,
      [&](const std::vector<VertexId>& W) {
        for (VertexId v : W) in_w[v] = 1;
        const SetMeasure m = measure_marked(map, W, in_w);
        for (VertexId v : W) in_w[v] = 0;
        alpha.offer(m.boundary, m.volume, W);
        beta.offer(m.boundary, m.size, W);
      },
      cap);
  out.alpha_upper = alpha.value();
  out.beta_upper = beta.value();
  out.alpha_witness = sorted_unique(alpha.witness);
  out.beta_witness = sorted_unique(beta.witness);
  return out;
}

Rational CheegerLower::best_alpha() const {
  Rational best = defined ? alpha : Rational(0);
  if (alpha3) best = std::max(best, *alpha3);
  return best;
}

Rational CheegerLower::best_beta() const {
  Rational best = defined ? beta : Rational(0);
  if (beta3) best = std::max(best, *beta3);
  return best;
}

CheegerLower cheeger_lower_bounds_from_data(long p_inf, std::optional<long> p_sup, std::optional<long> q_inf,
                                            std::optional<long> q_sup, const Rational& kappa_sup,
                                            const Rational& kappa_over_degree_sup) {
  if (p_inf < 1) throw InputError("vertex degrees must be positive");
  CheegerLower b;
  b.p_inf = p_inf;
  b.p_sup = p_sup;
  b.q_inf = q_inf;
  b.q_sup = q_sup;
  b.kappa_sup = kappa_sup;
  b.kappa_over_degree_sup = kappa_over_degree_sup;
  if (q_inf && *q_inf <= 2) {
    b.defined = false;
    b.reason = "faces of degree " + std::to_string(*q_inf) + " meet the region";
  } else {
    const Rational t = two_q_over(q_inf);
    b.alpha = 1 - t / p_inf;
    b.beta = p_inf - t;
  }
  // C with 2/infinity = 0.
  const bool q_ok = !q_sup || *q_sup > 2;
  const bool p_ok = !p_sup || *p_sup > 2;
  if (q_ok && p_ok) {
    Rational first = q_sup ? 1 + Rational(2, *q_sup - 2) : Rational(1);
    std::optional<Rational> second;
    if (!p_sup || !q_sup) second = Rational(1);
    else if (long den = (*p_sup - 2) * (*q_sup - 2) - 2; den > 0) second = 1 + Rational(2, den);
    if (second) {
      b.C = first * *second;
      b.alpha3 = -2 * *b.C * kappa_over_degree_sup;
      b.beta3 = -2 * *b.C * kappa_sup;
    }
  }
  return b;
}

CheegerLower cheeger_lower_bounds(const CombinatorialMap& map, const FaceTable& faces,
                                  const std::vector<VertexId>& U_in) {
  const auto U = sorted_unique(U_in);
  require_interior(map, U);
  long p_inf = map.degree(U.front()), p_sup = p_inf;
  std::optional<Rational> kappa_sup, ratio_sup;
  for (VertexId v : U) {
    p_inf = std::min<long>(p_inf, map.degree(v));
    p_sup = std::max<long>(p_sup, map.degree(v));
    auto k = try_vertex_curvature(map, faces, v);
    if (!k) throw PreconditionError("curvature at vertex " + std::to_string(map.label(v)) + " is not determined");
    const Rational ratio = *k / map.degree(v);
    kappa_sup = kappa_sup ? std::max(*kappa_sup, *k) : *k;
    ratio_sup = ratio_sup ? std::max(*ratio_sup, ratio) : ratio;
  }
  if (*kappa_sup > 0)
    throw PreconditionError("vertex curvature is positive on the region (sup " + to_string(*kappa_sup) + ")");
  std::optional<long> q_inf, q_sup;
  face_degree_range(map, faces, U, q_inf, q_sup);
  return cheeger_lower_bounds_from_data(p_inf, p_sup, q_inf, q_sup, *kappa_sup, *ratio_sup);
}

bool CheegerEstimate::consistent() const {
  return lower.best_alpha() <= upper.alpha_upper && lower.best_beta() <= upper.beta_upper;
}

CheegerEstimate cheeger_estimate(const CombinatorialMap& map, const FaceTable& faces, const std::vector<VertexId>& U,
                                 int k) {
  return {cheeger_bruteforce(map, U, k), cheeger_lower_bounds(map, faces, U)};
}

std::vector<ProxyPoint> cheeger_at_infinity_proxy(const CombinatorialMap& map, const FaceTable& faces, VertexId v0,
                                                  const std::vector<int>& radii) {
  const auto d = bfs_distances(map, {v0});
  std::vector<ProxyPoint> out;
  for (int r : radii) {
    std::vector<VertexId> U;
    for (VertexId v = 0; v < map.vertex_count(); ++v)
      if (d[v] > r && !map.is_frontier(v)) U.push_back(v);
    if (U.empty()) throw PreconditionError("no interior vertex outside B_" + std::to_string(r));
    out.push_back({r, static_cast<long>(U.size()), cheeger_lower_bounds(map, faces, U)});
  }
  return out;
}

std::vector<ProxyPoint> cheeger_at_infinity_proxy_radial(int base, int slope, const std::vector<int>& radii) {
  if (base < 2 || slope < 0) throw InputError("unsupported tree parameters");
  std::vector<ProxyPoint> out;
  for (int r : radii) {
    if (r < 0) throw InputError("radius must be non-negative");
    // degrees grow with the distance, so the extremes over V \ B_r sit on S_{r+1}
    const long p = base + static_cast<long>(slope) * (r + 1);
    const std::optional<long> p_sup = slope == 0 ? std::optional<long>(p) : std::nullopt;
    const Rational kappa = 1 - Rational(p, 2);
    out.push_back({r, 0, cheeger_lower_bounds_from_data(p, p_sup, std::nullopt, std::nullopt, kappa, kappa / p)});
  }
  return out;
}

int complement_components(const CombinatorialMap& map, const FaceTable& faces, const std::vector<VertexId>& W) {
  Scratch s(map.vertex_count());
  const auto sorted = sorted_unique(W);
  for (VertexId v : sorted) s.in_w[v] = 1;
  return components_marked(map, adjacency(map), one_ended(faces), sorted, s);
}

IsoperimetricCheck check_isoperimetric_inequality(const CombinatorialMap& map, const FaceTable& faces,
                                                  const std::vector<VertexId>& U_in, int k) {
  const auto U = sorted_unique(U_in);
  require_interior(map, U);
  std::optional<long> q_inf, q_sup;
  face_degree_range(map, faces, U, q_inf, q_sup);
  if (q_inf && *q_inf <= 2) throw PreconditionError("faces of degree at most 2 meet the region");
  IsoperimetricCheck c;
  c.t = two_q_over(q_inf);
  c.one_ended = one_ended(faces);
  const long a = q_inf ? 2 * *q_inf : 2, b = q_inf ? *q_inf - 2 : 1;  // t = a/b
  Scratch s(map.vertex_count());
  const Adjacency adj = adjacency(map);
  c.sets = for_each_connected_set(map, U, k, [&](const std::vector<VertexId>& W) {
    for (VertexId v : W) s.in_w[v] = 1;
    const SetMeasure m = measure_marked(map, W, s.in_w);
    const int comps = components_marked(map, adj, c.one_ended, W, s);
    for (VertexId v : W) s.in_w[v] = 0;
    ++c.checked;
    if (comps <= 2) ++c.small_c;
    // b |d_E W| >= b vol(W) - a (|W| + c(W) - 2)
    if (b * m.boundary < b * m.volume - a * (m.size + comps - 2)) {
      ++c.violations;
      if (c.counterexamples.size() < 5) c.counterexamples.push_back(W);
    }
  });
  return c;
}

}  // namespace curvagraph
