#pragma once

#include "curvagraph/map.hpp"
#include "curvagraph/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvagraph {

// Vertices whose neighborhoods are fully materialized: all vertices of a
// closed map, otherwise B_{N-1}(root) where N is the faithful radius.
struct CertifiedRegion {
  VertexId root = 0;
  int radius = -1;  // -1: whole map
  std::vector<char> contains;

  bool has(VertexId v) const { return contains[v] != 0; }
  bool empty() const;
};
CertifiedRegion certified_region(const CombinatorialMap& map, VertexId root = 0);

// Faces with a corner of multiplicity >= 2 at an interior vertex.
std::vector<FaceId> degenerate_faces(const CombinatorialMap& map, const FaceTable& faces);

struct FaceIntersection {
  FaceId f, g;
  std::vector<VertexId> vertices;
  std::vector<HalfEdgeId> edges;  // one half-edge per shared edge, lying on f
  int components = 0;
  // Both faces complete, or no shared vertex on the frontier: the component
  // count cannot change by growing the truncation.
  bool certified = false;
};
// Every pair of distinct faces sharing a vertex or an edge.
std::vector<FaceIntersection> face_intersections(const CombinatorialMap& map, const FaceTable& faces);
std::vector<std::pair<FaceId, FaceId>> degenerate_pairs(const CombinatorialMap& map,
                                                        const FaceTable& faces);

struct ExtendedEdge {
  std::vector<VertexId> path;
  bool regular = false;
  bool closed = false;     // a cycle of degree-two vertices
  bool truncated = false;  // runs into the frontier
};
std::vector<ExtendedEdge> extended_edges(const CombinatorialMap& map, const FaceTable& faces);

enum class TessClass { tessellating, strictly_locally, locally, other, undecided };
std::string class_name(TessClass c);

struct Violation {
  enum class Kind {
    loop,
    multi_edge,
    terminal_vertex,
    irregular_extended_edge,
    degenerate_face,
    degenerate_pair,
    single_face_edge,
    bad_intersection,
    extended_intersection,
    infinite_face,
    unknown_face
  };
  Kind kind;
  std::vector<VertexId> vertices;
  std::vector<FaceId> faces;
  std::string what;
};
std::string kind_name(Violation::Kind k);

struct ClassificationResult {
  TessClass cls = TessClass::undecided;
  int certified_radius = -1;
  bool t1 = true, t2 = true, t2_star = true, t3 = true, t3_star = true;
  bool simple = true;
  std::vector<FaceId> degenerate_faces;
  std::vector<std::pair<FaceId, FaceId>> degenerate_pairs;
  std::vector<ExtendedEdge> extended_edges;
  int undecided_pairs = 0;
  std::vector<Violation> witnesses;

  // D(F): degenerate faces together with the faces of degenerate pairs.
  std::vector<FaceId> degenerate_set() const;
};
ClassificationResult classify(const CombinatorialMap& map, const FaceTable& faces, VertexId root = 0);

enum class CurvatureMode { corner, vertex, face };

struct SideConditionReport {
  CurvatureMode mode;
  std::optional<Rational> sup;  // over the certified region; nullopt when nothing evaluable
  bool sup_minus_infinity = false;
  bool nonpositive = false;
  bool negative = false;
  bool simple = true;
  std::vector<VertexId> terminal_vertices;
  std::vector<ExtendedEdge> irregular_extended_edges;
  int extended_edge_count = 0;
  // Implications that the curvature sign forces but that fail on the map.
  std::vector<std::string> violations;

  bool consistent() const { return violations.empty(); }
};
SideConditionReport nonpositive_side_conditions(const CombinatorialMap& map, const FaceTable& faces,
                                                CurvatureMode mode, VertexId root = 0);

}  // namespace curvagraph
