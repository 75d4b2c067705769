#include "curvagraph/classify.hpp"

#include "curvagraph/curvature.hpp"
#include "curvagraph/errors.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>

namespace curvagraph {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::string vertex_list(const CombinatorialMap& map, const std::vector<VertexId>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(map.label(vs[i]));
  }
  return s;
}

bool is_infinite_face(const FaceTable& faces, FaceId f) { return faces.faces[f].degree.is_infinite(); }

}  // namespace

bool CertifiedRegion::empty() const {
  return std::none_of(contains.begin(), contains.end(), [](char c) { return c != 0; });
}

CertifiedRegion certified_region(const CombinatorialMap& map, VertexId root) {
  CertifiedRegion r;
  r.root = root;
  r.contains.assign(map.vertex_count(), 0);
  if (map.is_closed()) {
    std::fill(r.contains.begin(), r.contains.end(), 1);
    return r;
  }
  if (root < 0 || root >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(root));
  r.radius = faithful_radius(map, {root}) - 1;
  const auto dist = bfs_distances(map, {root});
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (dist[v] >= 0 && dist[v] <= r.radius) r.contains[v] = 1;
  return r;
}

std::vector<FaceId> degenerate_faces(const CombinatorialMap& map, const FaceTable& faces) {
  std::vector<FaceId> out;
  for (const auto& c : faces.corners)
    if (c.multiplicity >= 2 && !map.is_frontier(c.vertex)) out.push_back(c.face);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FaceIntersection> face_intersections(const CombinatorialMap& map, const FaceTable& faces) {
  std::map<std::pair<FaceId, FaceId>, FaceIntersection> pairs;
  auto entry = [&](FaceId a, FaceId b) -> FaceIntersection& {
    const auto key = std::minmax(a, b);
    auto [it, fresh] = pairs.try_emplace({key.first, key.second});
    if (fresh) {
      it->second.f = key.first;
      it->second.g = key.second;
    }
    return it->second;
  };
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    std::vector<FaceId> at;
    for (int ci : faces.corners_at_vertex[v]) at.push_back(faces.corners[ci].face);
    for (HalfEdgeId h : map.rotation(v)) at.push_back(faces.face_of[h]), at.push_back(faces.face_of[map.twin(h)]);
    std::sort(at.begin(), at.end());
    at.erase(std::unique(at.begin(), at.end()), at.end());
    for (std::size_t i = 0; i < at.size(); ++i)
      for (std::size_t j = i + 1; j < at.size(); ++j) entry(at[i], at[j]).vertices.push_back(v);
  }
  for (HalfEdgeId h = 0; h < map.halfedge_count(); h += 2) {
    const FaceId a = faces.face_of[h], b = faces.face_of[map.twin(h)];
    if (a == b) continue;
    auto& e = entry(a, b);
    e.edges.push_back(a == e.f ? h : map.twin(h));
  }
  std::vector<FaceIntersection> out;
  out.reserve(pairs.size());
  for (auto& [key, x] : pairs) {
    std::map<VertexId, int> index;
    for (VertexId v : x.vertices) index.emplace(v, static_cast<int>(index.size()));
    UnionFind uf(static_cast<int>(index.size()));
    int comps = static_cast<int>(index.size());
    for (HalfEdgeId h : x.edges)
      if (uf.unite(index.at(map.tail(h)), index.at(map.head(h)))) --comps;
    x.components = comps;
    const bool complete = faces.faces[x.f].complete && faces.faces[x.g].complete;
    x.certified = complete || std::none_of(x.vertices.begin(), x.vertices.end(),
                                           [&](VertexId v) { return map.is_frontier(v); });
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<std::pair<FaceId, FaceId>> degenerate_pairs(const CombinatorialMap& map,
                                                        const FaceTable& faces) {
  std::vector<std::pair<FaceId, FaceId>> out;
  for (const auto& x : face_intersections(map, faces))
    if (x.components >= 2 && x.certified) out.emplace_back(x.f, x.g);
  return out;
}

std::vector<ExtendedEdge> extended_edges(const CombinatorialMap& map, const FaceTable& faces) {
  std::vector<ExtendedEdge> out;
  std::vector<char> seen(map.vertex_count(), 0);
  auto inner = [&](VertexId v) { return !map.is_frontier(v) && map.degree(v) == 2; };
  auto other = [&](VertexId v, HalfEdgeId in) {
    for (HalfEdgeId h : map.rotation(v))
      if (h != in) return h;
    return kNone;
  };
  for (VertexId s = 0; s < map.vertex_count(); ++s) {
    if (seen[s] || !inner(s)) continue;
    const auto rot = map.rotation(s);
    if (map.head(rot[0]) == s) continue;  // loop
    ExtendedEdge e;
    std::vector<HalfEdgeId> halves[2];
    std::vector<VertexId> arms[2];
    bool closed = false;
    seen[s] = 1;
    for (int side = 0; side < 2 && !closed; ++side) {
      HalfEdgeId h = rot[side];
      while (true) {
        halves[side].push_back(h);
        const VertexId w = map.head(h);
        if (w == s) {
          closed = true;
          break;
        }
        arms[side].push_back(w);
        if (!inner(w) || seen[w]) break;
        seen[w] = 1;
        h = other(w, map.twin(h));
      }
    }
    e.closed = closed;
    if (closed) {
      e.path.push_back(s);
      for (VertexId w : arms[0]) e.path.push_back(w);
    } else {
      for (auto it = arms[1].rbegin(); it != arms[1].rend(); ++it) e.path.push_back(*it);
      e.path.push_back(s);
      for (VertexId w : arms[0]) e.path.push_back(w);
      const VertexId a = e.path.front(), b = e.path.back();
      auto terminal = [&](VertexId v) { return !map.is_frontier(v) && map.degree(v) < 2; };
      if (terminal(a) || terminal(b)) continue;
      e.truncated = map.is_frontier(a) || map.is_frontier(b);
    }
    e.regular = true;
    for (int side = 0; side < 2; ++side)
      for (HalfEdgeId h : halves[side])
        if (!is_infinite_face(faces, faces.face_of[h]) || !is_infinite_face(faces, faces.face_of[map.twin(h)]))
          e.regular = false;
    out.push_back(std::move(e));
  }
  return out;
}

std::string class_name(TessClass c) {
  switch (c) {
    case TessClass::tessellating: return "tessellating";
    case TessClass::strictly_locally: return "strictly-locally-tessellating";
    case TessClass::locally: return "locally-tessellating";
    case TessClass::other: return "other";
    case TessClass::undecided: return "undecided-at-radius";
  }
  return "?";
}

std::string kind_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::loop: return "loop";
    case Violation::Kind::multi_edge: return "multi-edge";
    case Violation::Kind::terminal_vertex: return "terminal-vertex";
    case Violation::Kind::irregular_extended_edge: return "irregular-extended-edge";
    case Violation::Kind::degenerate_face: return "degenerate-face";
    case Violation::Kind::degenerate_pair: return "degenerate-pair";
    case Violation::Kind::single_face_edge: return "edge-in-one-face";
    case Violation::Kind::bad_intersection: return "bad-intersection";
    case Violation::Kind::extended_intersection: return "extended-edge-intersection";
    case Violation::Kind::infinite_face: return "infinite-face";
    case Violation::Kind::unknown_face: return "unknown-face-degree";
  }
  return "?";
}

std::vector<FaceId> ClassificationResult::degenerate_set() const {
  std::set<FaceId> s(degenerate_faces.begin(), degenerate_faces.end());
  for (const auto& [f, g] : degenerate_pairs) s.insert(f), s.insert(g);
  return {s.begin(), s.end()};
}

ClassificationResult classify(const CombinatorialMap& map, const FaceTable& faces, VertexId root) {
  ClassificationResult r;
  const CertifiedRegion region = certified_region(map, root);
  r.certified_radius = region.radius;
  if (region.empty()) return r;

  using K = Violation::Kind;
  auto add = [&](K kind, std::vector<VertexId> vs, std::vector<FaceId> fs, std::string what) {
    r.witnesses.push_back({kind, std::move(vs), std::move(fs), std::move(what)});
  };
  auto face_in_region = [&](FaceId f) {
    for (int ci : faces.corners_of_face[f])
      if (region.has(faces.corners[ci].vertex)) return true;
    return false;
  };

  bool side_ok = true;
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    if (!region.has(v)) continue;
    std::map<VertexId, int> mult;
    for (VertexId w : map.neighbors(v)) ++mult[w];
    for (auto [w, m] : mult) {
      if (w == v) {
        r.simple = false;
        add(K::loop, {v}, {}, "loop at " + std::to_string(map.label(v)));
      } else if (m > 1 && v < w) {
        r.simple = false;
        add(K::multi_edge, {v, w}, {}, std::to_string(m) + " edges between " + vertex_list(map, {v, w}));
      }
    }
    if (map.degree(v) == 1) {
      side_ok = false;
      add(K::terminal_vertex, {v}, {}, "terminal vertex " + std::to_string(map.label(v)));
    }
  }
  if (!r.simple) side_ok = false;

  r.extended_edges = extended_edges(map, faces);
  for (const auto& e : r.extended_edges) {
    const bool relevant = std::any_of(e.path.begin(), e.path.end(), [&](VertexId v) { return region.has(v); });
    if (relevant && !e.regular) {
      side_ok = false;
      add(K::irregular_extended_edge, e.path, {}, "extended edge " + vertex_list(map, e.path) + " is not regular");
    }
  }

  for (FaceId f : degenerate_faces(map, faces)) {
    if (!face_in_region(f)) continue;
    r.degenerate_faces.push_back(f);
    r.t3_star = r.t3 = false;
    add(K::degenerate_face, {}, {f}, "face " + std::to_string(f) + " has a corner of multiplicity >= 2");
  }

  for (HalfEdgeId h = 0; h < map.halfedge_count(); h += 2) {
    if (faces.face_of[h] != faces.face_of[map.twin(h)]) continue;
    if (!region.has(map.tail(h)) && !region.has(map.head(h))) continue;
    r.t1 = false;
    add(K::single_face_edge, {map.tail(h), map.head(h)}, {faces.face_of[h]},
        "edge " + vertex_list(map, {map.tail(h), map.head(h)}) + " lies in a single face");
  }

  for (const auto& x : face_intersections(map, faces)) {
    const bool relevant =
        std::any_of(x.vertices.begin(), x.vertices.end(), [&](VertexId v) { return region.has(v); });
    if (!relevant) continue;
    if (x.components >= 2) {
      if (!x.certified) {
        ++r.undecided_pairs;
        continue;
      }
      r.degenerate_pairs.emplace_back(x.f, x.g);
      r.t2 = r.t2_star = false;
      add(K::degenerate_pair, x.vertices, {x.f, x.g},
          "faces " + std::to_string(x.f) + " and " + std::to_string(x.g) + " meet in " +
              std::to_string(x.components) + " components");
      continue;
    }
    const int nv = static_cast<int>(x.vertices.size()), ne = static_cast<int>(x.edges.size());
    if (nv == 1 || (nv == 2 && ne == 1)) continue;
    bool inner_ok = ne == nv - 1;
    std::map<VertexId, int> deg;
    for (HalfEdgeId h : x.edges) ++deg[map.tail(h)], ++deg[map.head(h)];
    for (auto [v, d] : deg) {
      if (d > 2) inner_ok = false;
      if (d == 2 && (map.is_frontier(v) || map.degree(v) != 2)) inner_ok = false;
    }
    const bool regular = is_infinite_face(faces, x.f) && is_infinite_face(faces, x.g);
    r.t2 = false;
    if (inner_ok && regular) {
      add(K::extended_intersection, x.vertices, {x.f, x.g},
          "faces " + std::to_string(x.f) + " and " + std::to_string(x.g) + " meet in a regular extended edge");
    } else {
      r.t2_star = false;
      add(K::bad_intersection, x.vertices, {x.f, x.g},
          "faces " + std::to_string(x.f) + " and " + std::to_string(x.g) + " meet in " + std::to_string(nv) +
              " vertices and " + std::to_string(ne) + " edges");
    }
  }

  bool unknown = false;
  for (const auto& f : faces.faces) {
    if (!face_in_region(f.id)) continue;
    if (f.degree.is_infinite()) {
      if (r.t3) add(K::infinite_face, {}, {f.id}, "face " + std::to_string(f.id) + " is infinite");
      r.t3 = false;
    } else if (!f.degree.known()) {
      unknown = true;
      add(K::unknown_face, {}, {f.id}, "face " + std::to_string(f.id) + " has unknown degree");
    }
  }

  if (!side_ok || !r.t1 || !r.t2_star || !r.t3_star) r.cls = TessClass::other;
  else if (unknown) r.cls = TessClass::undecided;
  else if (!r.t2) r.cls = TessClass::locally;
  else if (!r.t3) r.cls = TessClass::strictly_locally;
  else r.cls = TessClass::tessellating;
  return r;
}

SideConditionReport nonpositive_side_conditions(const CombinatorialMap& map, const FaceTable& faces,
                                                CurvatureMode mode, VertexId root) {
  SideConditionReport rep;
  rep.mode = mode;
  const CertifiedRegion region = certified_region(map, root);
  const CurvatureReport curv = curvature_report(map, faces);

  auto take = [&](const Rational& k) {
    if (!rep.sup || k > *rep.sup) rep.sup = k;
  };
  switch (mode) {
    case CurvatureMode::corner:
      for (std::size_t ci = 0; ci < faces.corners.size(); ++ci)
        if (region.has(faces.corners[ci].vertex) && curv.corner[ci]) take(*curv.corner[ci]);
      break;
    case CurvatureMode::vertex:
      for (VertexId v = 0; v < map.vertex_count(); ++v)
        if (region.has(v) && curv.vertex[v]) take(*curv.vertex[v]);
      break;
    case CurvatureMode::face: {
      bool any_finite = false;
      for (FaceId f = 0; f < faces.face_count(); ++f) {
        if (!curv.face[f]) continue;
        bool inside = true;
        for (int ci : faces.corners_of_face[f]) inside = inside && region.has(faces.corners[ci].vertex);
        if (!inside) continue;
        if (curv.face[f]->unbounded_negative) {
          rep.sup_minus_infinity = true;
          continue;
        }
        any_finite = true;
        take(curv.face[f]->value);
      }
      if (any_finite) rep.sup_minus_infinity = false;
      break;
    }
  }
  rep.nonpositive = rep.sup_minus_infinity || (rep.sup && *rep.sup <= 0);
  rep.negative = rep.sup_minus_infinity || (rep.sup && *rep.sup < 0);

  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    if (!region.has(v)) continue;
    auto nb = map.neighbors(v);
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end() || std::binary_search(nb.begin(), nb.end(), v))
      rep.simple = false;
    if (map.degree(v) == 1) rep.terminal_vertices.push_back(v);
  }
  for (auto& e : extended_edges(map, faces)) {
    if (std::none_of(e.path.begin(), e.path.end(), [&](VertexId v) { return region.has(v); })) continue;
    ++rep.extended_edge_count;
    if (!e.regular) rep.irregular_extended_edges.push_back(std::move(e));
  }

  const bool checks_simple = mode == CurvatureMode::corner || mode == CurvatureMode::face;
  const bool checks_rest = mode == CurvatureMode::corner || mode == CurvatureMode::vertex;
  if (rep.nonpositive) {
    if (checks_simple && !rep.simple) rep.violations.push_back("nonpositive curvature but the graph is not simple");
    if (checks_rest && !rep.terminal_vertices.empty())
      rep.violations.push_back("nonpositive curvature but terminal vertex " +
                               std::to_string(map.label(rep.terminal_vertices.front())));
    if (checks_rest && !rep.irregular_extended_edges.empty())
      rep.violations.push_back("nonpositive curvature but an extended edge is not regular");
  }
  if (rep.negative && checks_rest && rep.extended_edge_count > 0)
    rep.violations.push_back("negative curvature but an extended edge exists");
  return rep;
}

}  // namespace curvagraph
