#pragma once

#include "curvagraph/map.hpp"
#include "curvagraph/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace curvagraph {

// 1/|v| - 1/2 + 1/|f| with 1/inf = 0. Throws PreconditionError for
// unknown or bounded-below face degrees.
Rational corner_curvature(int vertex_degree, const FaceDegree& face_degree);
// Same formula with a face known only to have degree >= n: an upper bound.
Rational corner_curvature_upper(int vertex_degree, const FaceDegree& face_degree);

Rational corner_curvature(const CombinatorialMap& map, const FaceTable& faces, int corner);
Rational vertex_curvature(const CombinatorialMap& map, const FaceTable& faces, VertexId v);
std::optional<Rational> try_vertex_curvature(const CombinatorialMap& map, const FaceTable& faces,
                                             VertexId v);
// Upper bound valid when some incident faces only have a lower degree bound.
std::optional<Rational> vertex_curvature_upper(const CombinatorialMap& map, const FaceTable& faces,
                                               VertexId v);

struct FaceCurvature {
  bool unbounded_negative = false;  // infinite face with boundary vertices of degree >= 3
  Rational value;                   // meaningful when !unbounded_negative
};
FaceCurvature face_curvature(const CombinatorialMap& map, const FaceTable& faces, FaceId f);
std::optional<FaceCurvature> try_face_curvature(const CombinatorialMap& map, const FaceTable& faces,
                                                FaceId f);

struct CurvatureReport {
  std::vector<std::optional<Rational>> corner;  // indexed like FaceTable::corners
  std::vector<std::optional<Rational>> vertex;
  std::vector<std::optional<FaceCurvature>> face;
  std::optional<Rational> sup_corner;
  std::optional<Rational> sup_vertex;
  std::optional<FaceCurvature> sup_face;
  int evaluated_vertices = 0;
};

// Evaluates every quantity that is determined by the materialized data.
CurvatureReport curvature_report(const CombinatorialMap& map, const FaceTable& faces);

// Sum of vertex curvatures of the induced subgraph on W, computed in that
// subgraph. A single vertex counts 2.
Rational gauss_bonnet(const CombinatorialMap& map, const std::vector<VertexId>& W);

inline const Rational& higuchi_threshold() {
  static const Rational t(-1, 1806);
  return t;
}

struct HiguchiResult {
  bool applicable = false;
  std::string reason;
  Rational sup;
  std::vector<VertexId> witnesses;  // vertices with curvature in (-1/1806, 0)
};
HiguchiResult higuchi_gap(const CombinatorialMap& map, const FaceTable& faces);

// Face degree 0 stands for an infinite face in vertex patterns.
inline constexpr long kInfiniteFace = 0;

Rational pattern_curvature(const std::vector<long>& face_degrees);

// Visits every vertex pattern (n; l_1 <= ... <= l_n) with 1 <= n <= max_degree,
// 3 <= l_i <= max_face or infinite, passing the curvature scaled by
// lcm(1..max_face).
struct PatternScale {
  __int128 denominator;
  Rational to_rational(__int128 scaled) const;
};
PatternScale pattern_scale(long max_face);
std::uint64_t for_each_pattern(int max_degree, long max_face, bool include_infinite,
                               const std::function<void(const std::vector<long>&, __int128)>& visit);

struct PatternSurvey {
  std::uint64_t enumerated = 0;
  std::uint64_t negative = 0;
  Rational max_negative;
  std::vector<std::vector<long>> argmax;
};
PatternSurvey survey_negative_patterns(int max_degree, long max_face, bool include_infinite);

// Largest curvature among patterns accepted by `keep`.
std::optional<Rational> max_pattern_curvature(int max_degree, long max_face, bool include_infinite,
                                              const std::function<bool(const std::vector<long>&)>& keep);

std::string pattern_string(const std::vector<long>& face_degrees);

}  // namespace curvagraph
