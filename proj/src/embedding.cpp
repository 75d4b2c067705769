#include "curvagraph/embedding.hpp"

#include "curvagraph/classify.hpp"
#include "curvagraph/curvature.hpp"
#include "curvagraph/errors.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <set>

namespace curvagraph {

namespace {

std::string lbl(const CombinatorialMap& map, VertexId v) { return std::to_string(map.label(v)); }

void check_set(const CombinatorialMap& map, const std::vector<VertexId>& W) {
  if (W.empty()) throw InputError("empty vertex set");
  std::set<VertexId> seen;
  for (VertexId v : W) {
    if (v < 0 || v >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v));
    if (!seen.insert(v).second) throw InputError("vertex set has duplicates");
  }
}

long ceil_positive(const Rational& x) {
  BigInt n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  BigInt c = (n + d - 1) / d;
  return c.convert_to<long>();
}

// Vertex sequence of a face walk; open segments include the final head.
std::vector<VertexId> walk_vertices(const CombinatorialMap& map, const FaceOrbit& f) {
  std::vector<VertexId> seq;
  seq.reserve(f.walk.size() + 1);
  for (HalfEdgeId h : f.walk) seq.push_back(map.tail(h));
  if (!f.complete) seq.push_back(map.head(f.walk.back()));
  return seq;
}

// Face degree as used by the curvature checks on the supergraph: faces that
// are still unbounded get closed later with more than R vertices.
FaceDegree eventual_degree(const FaceDegree& d, long R) {
  if (d.is_infinite()) return FaceDegree::at_least(R + 1);
  return d;
}

}  // namespace

bool is_simply_connected(const CombinatorialMap& map, const std::vector<VertexId>& W) {
  check_set(map, W);
  std::vector<char> in(map.vertex_count(), 0);
  for (VertexId v : W) in[v] = 1;
  std::vector<char> seen(map.vertex_count(), 0);
  std::deque<VertexId> queue{W.front()};
  seen[W.front()] = 1;
  std::size_t reached = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    ++reached;
    for (VertexId w : map.neighbors(v))
      if (in[w] && !seen[w]) seen[w] = 1, queue.push_back(w);
  }
  if (reached != W.size()) return false;

  int components = 0;
  bool all_open = true;
  for (VertexId s = 0; s < map.vertex_count(); ++s) {
    if (in[s] || seen[s]) continue;
    ++components;
    bool open = false;
    queue.push_back(s);
    seen[s] = 1;
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      open = open || map.is_frontier(v);
      for (VertexId w : map.neighbors(v))
        if (!in[w] && !seen[w]) seen[w] = 1, queue.push_back(w);
    }
    all_open = all_open && open;
  }
  if (map.is_closed()) return components <= 1;
  return all_open;
}

int set_diameter(const CombinatorialMap& map, const std::vector<VertexId>& W) {
  check_set(map, W);
  int diam = 0;
  for (VertexId v : W) {
    const auto d = bfs_distances(map, {v});
    for (VertexId w : W) diam = std::max(diam, d[w]);
  }
  return diam;
}

ClosingParameter closing_parameter(const CombinatorialMap& map, const std::vector<VertexId>& W,
                                   const Rational& eps) {
  if (eps <= 0) throw InputError("epsilon must be positive");
  ClosingParameter c{};
  c.diameter = set_diameter(map, W);
  c.min_degree = INT_MAX;
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (!map.is_frontier(v)) c.min_degree = std::min(c.min_degree, map.degree(v));
  if (c.min_degree == INT_MAX) throw PreconditionError("no interior vertex");
  Rational r = std::max(Rational(6), Rational(2 * c.diameter));
  r = std::max(r, Rational(2 + c.min_degree) / eps);
  c.value = ceil_positive(r);
  return c;
}

EmbeddingResult embed(const CombinatorialMap& map, const std::vector<VertexId>& W, const Rational& eps,
                      const EmbedOptions& options) {
  check_set(map, W);
  if (!map.is_simple()) throw PreconditionError("map is not simple");
  if (!is_simply_connected(map, W)) throw PreconditionError("W is not simply connected");
  const FaceTable faces = trace_faces(map);
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    const auto k = try_vertex_curvature(map, faces, v);
    if (k && *k > 0)
      throw PreconditionError("positive curvature " + to_string(*k) + " at vertex " + lbl(map, v));
  }
  const auto cls = classify(map, faces, W.front());
  if (cls.cls == TessClass::other) throw PreconditionError("map is not locally tessellating");

  EmbeddingResult res;
  res.W = W;
  res.epsilon = eps;
  res.closing = closing_parameter(map, W, eps);
  res.original_vertex_count = map.vertex_count();
  const long R = res.closing.value;
  const auto dist0 = bfs_distances(map, W);

  struct Slot {
    VertexId v;
    HalfEdgeId after;
  };
  std::vector<Slot> slots;
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    const auto k = try_vertex_curvature(map, faces, v);
    if (!k || *k != 0) continue;
    int n = 0;
    for (HalfEdgeId h : map.rotation(v)) {
      if (map.gap_after(h)) continue;
      if (!faces.faces[faces.corner_face(map, h)].degree.is_infinite()) continue;
      slots.push_back({v, h});
      ++n;
    }
    if (n > 0) res.added_trees.emplace_back(v, n);
  }

  int M = std::min(options.horizon, faithful_radius(map, W));
  auto tree_cost = [&](int radius) {
    double total = map.vertex_count();
    for (const auto& s : slots) {
      const int depth = std::max(0, radius - dist0[s.v] - 1);
      total += std::ldexp(1.0, depth + 1) - 1;
    }
    return total;
  };
  while (M > 0 && tree_cost(M) > static_cast<double>(options.vertex_budget)) --M;
  res.materialized_radius = M;

  CombinatorialMap g = map;
  long next_label = 0;
  for (VertexId v = 0; v < map.vertex_count(); ++v) next_label = std::max(next_label, map.label(v) + 1);

  // Step 1
  for (const auto& s : slots) {
    const int depth = std::max(0, M - dist0[s.v] - 1);
    const VertexId root = g.add_vertex(next_label++);
    g.add_edge(s.v, root, s.after, kNone);
    struct Node {
      VertexId v;
      int level;
    };
    std::vector<Node> stack{{root, 0}};
    while (!stack.empty()) {
      const Node node = stack.back();
      stack.pop_back();
      ++res.tree_vertex_count;
      if (node.level == depth) {
        g.mark_frontier(node.v);
        g.set_segment_hint(g.first_halfedge(node.v), FaceDegree::infinite());
        continue;
      }
      for (int c = 0; c < 2; ++c) {
        const VertexId child = g.add_vertex(next_label++);
        g.add_edge(node.v, child);
        stack.push_back({child, node.level + 1});
      }
    }
  }

  // Step 2
  const auto dist = bfs_distances(g, W);
  for (int n = 1; n <= M; ++n) {
    const FaceTable ft = trace_faces(g);
    struct Closing {
      VertexId a, b;
      HalfEdgeId after_a, after_b;
      long size;
    };
    std::vector<Closing> todo;
    for (const auto& f : ft.faces) {
      if (!f.degree.is_infinite()) continue;
      const auto seq = walk_vertices(g, f);
      int first = -1, last = -1;
      for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
        if (dist[seq[i]] < 0 || dist[seq[i]] > n) continue;
        if (first < 0) first = i;
        else if (last != i - 1)
          throw PreconditionError("face meets B_" + std::to_string(n) + "(W) in several arcs");
        last = i;
      }
      if (first < 0) continue;
      const long size = last - first + 1;
      const bool closable = first >= 1 && last + 1 < static_cast<int>(seq.size()) && !f.complete;
      if (size > R) {
        int on_sphere = 0;
        for (int i = first; i <= last; ++i) on_sphere += dist[seq[i]] == n;
        const bool ends = dist[seq[first]] == n && dist[seq[last]] == n && seq[first] != seq[last];
        if (on_sphere != 2 || !ends)
          throw PreconditionError("the vertices of f cap S_" + std::to_string(n) + "(W) are not unique");
        if (closable) {
          if (g.has_edge(seq[first], seq[last]))
            throw PreconditionError("closing edge " + lbl(g, seq[first]) + "-" + lbl(g, seq[last]) +
                                    " already present");
          todo.push_back({seq[first], seq[last], g.twin(f.walk[first - 1]), g.twin(f.walk[last - 1]), size});
          continue;
        }
      }
      if (n == M) res.pending_faces.push_back({seq[first], seq[last], size});
    }
    for (const auto& c : todo) {
      g.add_edge(c.a, c.b, c.after_a, c.after_b);
      res.closed_faces.push_back({n, c.a, c.b, c.size});
    }
  }

  for (VertexId v = 0; v < map.vertex_count(); ++v) res.correspondence.emplace_back(v, v);
  res.supergraph = std::move(g);
  return res;
}

bool EmbeddingReport::all_passed() const {
  for (const auto& p : properties)
    if (p.applicable && !p.passed) return false;
  return closed_faces_large && tree_vertices_ok && complete_faces_polygons;
}

EmbeddingReport verify_properties(const EmbeddingResult& result, const CombinatorialMap& original) {
  const CombinatorialMap& g = result.supergraph;
  const FaceTable f0 = trace_faces(original);
  const FaceTable f1 = trace_faces(g);
  const long R = result.closing.value;
  const auto& W = result.W;
  std::vector<char> inW(original.vertex_count(), 0);
  for (VertexId v : W) inW[v] = 1;
  EmbeddingReport rep;

  auto fail = [](PropertyCheck& p, std::string what) {
    p.passed = false;
    if (p.failures.size() < 20) p.failures.push_back(std::move(what));
  };

  PropertyCheck g1{"G1", true, true, 0, {}};
  for (VertexId v : W) {
    const auto k = try_vertex_curvature(original, f0, v);
    if (!k) {
      fail(g1, "curvature at " + lbl(original, v) + " is not determined");
      continue;
    }
    int infinigons = 0;
    bool corners_nonpositive = true;
    for (int ci : f0.corners_at_vertex[v]) {
      const auto& d = f0.faces[f0.corners[ci].face].degree;
      if (d.is_infinite()) infinigons += f0.corners[ci].multiplicity;
      if (corner_curvature(original, f0, ci) > 0) corners_nonpositive = false;
    }
    const int expected = (infinigons == 0 || *k < 0) ? original.degree(v) : original.degree(v) + infinigons;
    ++g1.checked;
    if (g.degree(v) != expected)
      fail(g1, "vertex " + lbl(original, v) + ": degree " + std::to_string(g.degree(v)) + ", expected " +
                   std::to_string(expected));
    if (corners_nonpositive) {
      const bool added = g.degree(v) > original.degree(v);
      const bool inner = original.degree(v) == 2;
      if (added != inner) fail(g1, "vertex " + lbl(original, v) + ": edges added iff inner vertex fails");
    }
  }
  rep.properties.push_back(g1);

  PropertyCheck g2{"G2", true, true, 0, {}};
  auto induced_edges = [](const CombinatorialMap& m, const std::vector<char>& in) {
    std::set<std::pair<VertexId, VertexId>> e;
    for (VertexId v = 0; v < static_cast<int>(in.size()); ++v) {
      if (!in[v]) continue;
      for (VertexId w : m.neighbors(v))
        if (w < static_cast<int>(in.size()) && in[w]) e.emplace(std::min(v, w), std::max(v, w));
    }
    return e;
  };
  ++g2.checked;
  if (induced_edges(original, inW) != induced_edges(g, inW)) fail(g2, "induced subgraphs on W differ");
  bool negative_on_W = true;
  for (VertexId v : W) {
    const auto k = try_vertex_curvature(original, f0, v);
    negative_on_W = negative_on_W && k && *k < 0;
  }
  if (negative_on_W) {
    ++g2.checked;
    std::vector<char> b0(original.vertex_count(), 0), b1(g.vertex_count(), 0);
    for (VertexId v : W) {
      b0[v] = 1, b1[v] = 1;
      for (VertexId w : original.neighbors(v)) b0[w] = 1;
      for (VertexId w : g.neighbors(v)) b1[w] = 1;
    }
    std::vector<char> b1_old(b1.begin(), b1.begin() + original.vertex_count());
    const bool extra = std::any_of(b1.begin() + original.vertex_count(), b1.end(), [](char c) { return c; });
    if (extra || b0 != b1_old) fail(g2, "B_1(W) differs");
    else if (induced_edges(original, b0) != induced_edges(g, b0)) fail(g2, "induced subgraphs on B_1(W) differ");
  }
  rep.properties.push_back(g2);

  PropertyCheck g3{"G3", true, true, 0, {}};
  for (VertexId v : W) {
    const auto d0 = bfs_distances(original, {v});
    const auto d1 = bfs_distances(g, {v});
    for (VertexId w : W) {
      ++g3.checked;
      if (d0[w] != d1[w])
        fail(g3, "d(" + lbl(original, v) + "," + lbl(original, w) + ") changes from " + std::to_string(d0[w]) +
                     " to " + std::to_string(d1[w]));
    }
  }
  rep.properties.push_back(g3);

  const CurvatureReport c0 = curvature_report(original, f0);

  PropertyCheck g4{"G4", true, true, 0, {}};
  g4.applicable = c0.sup_corner && *c0.sup_corner <= 0;
  if (g4.applicable) {
    const Rational bound = std::min(Rational(0), Rational(*c0.sup_corner + result.epsilon));
    for (const auto& c : f1.corners) {
      if (g.is_frontier(c.vertex)) continue;
      const auto d = eventual_degree(f1.faces[c.face].degree, R);
      if (d.kind == FaceDegree::Kind::unknown) continue;
      ++g4.checked;
      const Rational k = corner_curvature_upper(g.degree(c.vertex), d);
      if (k > bound)
        fail(g4, "corner at " + lbl(g, c.vertex) + ": " + to_string(k) + " > " + to_string(bound));
    }
  }
  rep.properties.push_back(g4);

  PropertyCheck g5{"G5", true, true, 0, {}};
  g5.applicable = c0.sup_vertex && *c0.sup_vertex <= 0 && result.epsilon < -higuchi_threshold();
  if (g5.applicable) {
    const Rational bound = std::min(Rational(0), Rational(*c0.sup_vertex + result.epsilon));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (g.is_frontier(v)) continue;
      Rational k(1 - Rational(g.degree(v), 2));
      bool known = true;
      for (int ci : f1.corners_at_vertex[v]) {
        const auto d = eventual_degree(f1.faces[f1.corners[ci].face].degree, R);
        if (d.kind == FaceDegree::Kind::unknown) known = false;
        else if (d.kind != FaceDegree::Kind::infinite) k += f1.corners[ci].multiplicity * Rational(1, d.value);
      }
      if (!known) continue;
      ++g5.checked;
      if (k > bound) fail(g5, "vertex " + lbl(g, v) + ": " + to_string(k) + " > " + to_string(bound));
    }
  }
  rep.properties.push_back(g5);

  const long big = std::max<long>(6, ceil_positive(Rational(1) / result.epsilon));
  for (const auto& c : result.closed_faces)
    if (c.degree < big) rep.closed_faces_large = false;
  for (VertexId v = result.original_vertex_count; v < g.vertex_count(); ++v)
    if (!g.is_frontier(v) && g.degree(v) < 3) rep.tree_vertices_ok = false;
  for (const auto& f : f1.faces) {
    if (!f.complete) continue;
    if (f.length() < 3) rep.complete_faces_polygons = false;
    for (int ci : f1.corners_of_face[f.id])
      if (f1.corners[ci].multiplicity != 1) rep.complete_faces_polygons = false;
  }
  return rep;
}

}  // namespace curvagraph
