#include "curvagraph/curvature.hpp"

#include "curvagraph/errors.hpp"

#include <algorithm>
#include <numeric>

namespace curvagraph {

namespace {

Rational reciprocal(const FaceDegree& d) {
  if (d.is_infinite()) return Rational(0);
  return Rational(1, d.value);
}

bool vertex_known(const CombinatorialMap& map, const FaceTable& faces, VertexId v) {
  if (map.is_frontier(v)) return false;
  for (int ci : faces.corners_at_vertex[v])
    if (!faces.faces[faces.corners[ci].face].degree.known()) return false;
  return true;
}

BigInt to_bigint(__int128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
  BigInt hi = static_cast<unsigned long long>(u >> 64);
  BigInt lo = static_cast<unsigned long long>(u & 0xffffffffffffffffULL);
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

}  // namespace

Rational corner_curvature(int vertex_degree, const FaceDegree& face_degree) {
  if (!face_degree.known()) throw PreconditionError("face degree unknown (truncation too small)");
  if (vertex_degree < 1) throw PreconditionError("corner at a vertex without edges");
  return Rational(1, vertex_degree) - Rational(1, 2) + reciprocal(face_degree);
}

Rational corner_curvature_upper(int vertex_degree, const FaceDegree& face_degree) {
  if (face_degree.kind == FaceDegree::Kind::at_least)
    return Rational(1, vertex_degree) - Rational(1, 2) + Rational(1, face_degree.value);
  return corner_curvature(vertex_degree, face_degree);
}

Rational corner_curvature(const CombinatorialMap& map, const FaceTable& faces, int corner) {
  const Corner& c = faces.corners[corner];
  return corner_curvature(map.degree(c.vertex), faces.faces[c.face].degree);
}

Rational vertex_curvature(const CombinatorialMap& map, const FaceTable& faces, VertexId v) {
  if (v < 0 || v >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v));
  if (map.is_frontier(v)) throw PreconditionError("vertex " + std::to_string(map.label(v)) + " is on the frontier");
  Rational sum(0);
  for (int ci : faces.corners_at_vertex[v])
    sum += faces.corners[ci].multiplicity * corner_curvature(map, faces, ci);
  return sum;
}

std::optional<Rational> try_vertex_curvature(const CombinatorialMap& map, const FaceTable& faces,
                                             VertexId v) {
  if (!vertex_known(map, faces, v) || map.degree(v) == 0) return std::nullopt;
  return vertex_curvature(map, faces, v);
}

std::optional<Rational> vertex_curvature_upper(const CombinatorialMap& map, const FaceTable& faces,
                                               VertexId v) {
  if (map.is_frontier(v) || map.degree(v) == 0) return std::nullopt;
  Rational sum(0);
  for (int ci : faces.corners_at_vertex[v]) {
    const auto& d = faces.faces[faces.corners[ci].face].degree;
    if (d.kind == FaceDegree::Kind::unknown) return std::nullopt;
    sum += faces.corners[ci].multiplicity * corner_curvature_upper(map.degree(v), d);
  }
  return sum;
}

FaceCurvature face_curvature(const CombinatorialMap& map, const FaceTable& faces, FaceId f) {
  const auto& face = faces.faces[f];
  if (!face.degree.known()) throw PreconditionError("face degree unknown (truncation too small)");
  FaceCurvature out;
  if (face.degree.is_infinite()) {
    for (VertexId v : faces.face_vertices(map, f))
      if (map.degree(v) >= 3) out.unbounded_negative = true;
    if (out.unbounded_negative) return out;
  } else if (!face.complete) {
    throw PreconditionError("face is not completely materialized");
  }
  for (int ci : faces.corners_of_face[f]) {
    const VertexId v = faces.corners[ci].vertex;
    if (map.is_frontier(v)) throw PreconditionError("face has a frontier corner");
    out.value += faces.corners[ci].multiplicity * corner_curvature(map, faces, ci);
  }
  return out;
}

std::optional<FaceCurvature> try_face_curvature(const CombinatorialMap& map, const FaceTable& faces,
                                                FaceId f) {
  try {
    return face_curvature(map, faces, f);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

CurvatureReport curvature_report(const CombinatorialMap& map, const FaceTable& faces) {
  CurvatureReport r;
  r.corner.resize(faces.corners.size());
  for (std::size_t ci = 0; ci < faces.corners.size(); ++ci) {
    const auto& c = faces.corners[ci];
    if (map.is_frontier(c.vertex) || !faces.faces[c.face].degree.known()) continue;
    r.corner[ci] = corner_curvature(map, faces, static_cast<int>(ci));
    if (!r.sup_corner || *r.corner[ci] > *r.sup_corner) r.sup_corner = r.corner[ci];
  }
  r.vertex.resize(map.vertex_count());
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    r.vertex[v] = try_vertex_curvature(map, faces, v);
    if (!r.vertex[v]) continue;
    ++r.evaluated_vertices;
    if (!r.sup_vertex || *r.vertex[v] > *r.sup_vertex) r.sup_vertex = r.vertex[v];
  }
  r.face.resize(faces.face_count());
  for (FaceId f = 0; f < faces.face_count(); ++f) {
    r.face[f] = try_face_curvature(map, faces, f);
    if (!r.face[f]) continue;
    const auto& fc = *r.face[f];
    if (!r.sup_face || (r.sup_face->unbounded_negative && !fc.unbounded_negative) ||
        (!r.sup_face->unbounded_negative && !fc.unbounded_negative && fc.value > r.sup_face->value))
      r.sup_face = fc;
  }
  return r;
}

Rational gauss_bonnet(const CombinatorialMap& map, const std::vector<VertexId>& W) {
  if (W.empty()) throw InputError("empty vertex set");
  std::vector<VertexId> sorted = W;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("vertex set has duplicates");
  for (VertexId v : W)
    if (v < 0 || v >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v));
  const CombinatorialMap sub = induced_submap(map, W, false);
  if (!sub.is_connected()) throw PreconditionError("vertex set is not connected");
  if (sub.vertex_count() == 1) return Rational(2);
  const FaceTable faces = trace_faces(sub);
  Rational sum(0);
  for (VertexId v = 0; v < sub.vertex_count(); ++v) sum += vertex_curvature(sub, faces, v);
  return sum;
}

HiguchiResult higuchi_gap(const CombinatorialMap& map, const FaceTable& faces) {
  if (!map.is_simple()) throw PreconditionError("map is not simple");
  HiguchiResult r;
  bool any = false;
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    const auto k = try_vertex_curvature(map, faces, v);
    if (!k) continue;
    if (*k >= 0) {
      r.reason = "vertex " + std::to_string(map.label(v)) + " has curvature " + to_string(*k) + " >= 0";
      return r;
    }
    if (!any || *k > r.sup) r.sup = *k;
    any = true;
    if (*k > higuchi_threshold()) r.witnesses.push_back(v);
  }
  if (!any) {
    r.reason = "no vertex curvature is determined";
    return r;
  }
  r.applicable = true;
  return r;
}

Rational pattern_curvature(const std::vector<long>& face_degrees) {
  const long n = static_cast<long>(face_degrees.size());
  Rational k = Rational(1) - Rational(n, 2);
  for (long l : face_degrees)
    if (l != kInfiniteFace) k += Rational(1, l);
  return k;
}

Rational PatternScale::to_rational(__int128 scaled) const {
  return Rational(to_bigint(scaled), to_bigint(denominator));
}

PatternScale pattern_scale(long max_face) {
  __int128 l = 2;
  for (long i = 3; i <= max_face; ++i) {
    __int128 a = l, b = i;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    l = l / a * i;
    if (l > (static_cast<__int128>(1) << 120)) throw InputError("face degree bound too large");
  }
  return {l};
}

std::uint64_t for_each_pattern(int max_degree, long max_face, bool include_infinite,
                               const std::function<void(const std::vector<long>&, __int128)>& visit) {
  const __int128 L = pattern_scale(max_face).denominator;
  std::vector<long> values;
  std::vector<__int128> contrib;
  for (long l = 3; l <= max_face; ++l) {
    values.push_back(l);
    contrib.push_back(L / l);
  }
  if (include_infinite) {
    values.push_back(kInfiniteFace);
    contrib.push_back(0);
  }
  std::uint64_t count = 0;
  std::vector<long> pattern;
  for (int n = 1; n <= max_degree; ++n) {
    pattern.assign(n, 0);
    const __int128 base = L - static_cast<__int128>(n) * (L / 2);
    // iterative nondecreasing index vectors
    std::vector<std::size_t> idx(n, 0);
    std::vector<__int128> partial(n + 1, 0);
    partial[0] = base;
    int pos = 0;
    while (pos >= 0) {
      if (pos == n) {
        ++count;
        visit(pattern, partial[n]);
        --pos;
        if (pos >= 0) ++idx[pos];
        continue;
      }
      if (idx[pos] >= values.size()) {
        --pos;
        if (pos >= 0) ++idx[pos];
        continue;
      }
      pattern[pos] = values[idx[pos]];
      partial[pos + 1] = partial[pos] + contrib[idx[pos]];
      ++pos;
      if (pos < n) idx[pos] = idx[pos - 1];
    }
  }
  return count;
}

PatternSurvey survey_negative_patterns(int max_degree, long max_face, bool include_infinite) {
  const PatternScale scale = pattern_scale(max_face);
  PatternSurvey s;
  bool found = false;
  __int128 best = 0;
  s.enumerated = for_each_pattern(max_degree, max_face, include_infinite,
                                  [&](const std::vector<long>& pat, __int128 k) {
                                    if (k >= 0) return;
                                    ++s.negative;
                                    if (!found || k > best) {
                                      best = k;
                                      found = true;
                                      s.argmax.assign(1, pat);
                                    } else if (k == best) {
                                      s.argmax.push_back(pat);
                                    }
                                  });
  if (found) s.max_negative = scale.to_rational(best);
  return s;
}

std::optional<Rational> max_pattern_curvature(int max_degree, long max_face, bool include_infinite,
                                              const std::function<bool(const std::vector<long>&)>& keep) {
  const PatternScale scale = pattern_scale(max_face);
  std::optional<__int128> best;
  for_each_pattern(max_degree, max_face, include_infinite, [&](const std::vector<long>& pat, __int128 k) {
    if ((!best || k > *best) && keep(pat)) best = k;
  });
  if (!best) return std::nullopt;
  return scale.to_rational(*best);
}

std::string pattern_string(const std::vector<long>& face_degrees) {
  std::string s = "(" + std::to_string(face_degrees.size()) + ";";
  for (std::size_t i = 0; i < face_degrees.size(); ++i) {
    if (i) s += ",";
    s += face_degrees[i] == kInfiniteFace ? "inf" : std::to_string(face_degrees[i]);
  }
  return s + ")";
}

}  // namespace curvagraph
