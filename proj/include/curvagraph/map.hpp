#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curvagraph {

using VertexId = int;
using HalfEdgeId = int;
using FaceId = int;

inline constexpr int kNone = -1;

struct HalfEdge {
  HalfEdgeId id;
  VertexId tail;
  HalfEdgeId twin;
};

struct FaceDegree {
  enum class Kind { finite, infinite, unknown, at_least };

  Kind kind = Kind::unknown;
  long value = 0;

  static FaceDegree finite(long n) { return {Kind::finite, n}; }
  static FaceDegree infinite() { return {Kind::infinite, 0}; }
  static FaceDegree unknown() { return {Kind::unknown, 0}; }
  // Finite or infinite but certainly >= n.
  static FaceDegree at_least(long n) { return {Kind::at_least, n}; }

  bool known() const { return kind == Kind::finite || kind == Kind::infinite; }
  bool is_finite() const { return kind == Kind::finite; }
  bool is_infinite() const { return kind == Kind::infinite; }
  std::string str() const;

  friend bool operator==(const FaceDegree&, const FaceDegree&) = default;
};

// Rotation system on half-edges. Each vertex keeps its outgoing half-edges in
// a circular doubly linked list in counterclockwise order. A half-edge h may
// carry a gap marker: neighbors of tail(h) are missing between h and
// rot_next(h) (truncation of an infinite graph). A vertex with any gap is a
// frontier vertex.
class CombinatorialMap {
public:
  int vertex_count() const { return static_cast<int>(first_.size()); }
  int halfedge_count() const { return static_cast<int>(tail_.size()); }
  int edge_count() const { return halfedge_count() / 2; }

  VertexId add_vertex(long label = -1);
  // Adds the edge u-v and returns the half-edge u->v. The new half-edge at u is
  // placed right after after_u (kNone: appended at the end of the rotation),
  // likewise at v.
  HalfEdgeId add_edge(VertexId u, VertexId v, HalfEdgeId after_u = kNone,
                      HalfEdgeId after_v = kNone);

  VertexId tail(HalfEdgeId h) const { return tail_[h]; }
  VertexId head(HalfEdgeId h) const { return tail_[twin(h)]; }
  HalfEdgeId twin(HalfEdgeId h) const { return h ^ 1; }
  HalfEdgeId rot_next(HalfEdgeId h) const { return next_[h]; }
  HalfEdgeId rot_prev(HalfEdgeId h) const { return prev_[h]; }
  HalfEdgeId face_next(HalfEdgeId h) const { return next_[twin(h)]; }
  HalfEdgeId first_halfedge(VertexId v) const { return first_[v]; }
  void set_first_halfedge(VertexId v, HalfEdgeId h);
  // Reorders the rotation at v; order must be a permutation of its half-edges.
  void set_rotation(VertexId v, const std::vector<HalfEdgeId>& order);

  int degree(VertexId v) const { return degree_[v]; }
  std::vector<HalfEdgeId> rotation(VertexId v) const;
  std::vector<VertexId> neighbors(VertexId v) const;

  bool gap_after(HalfEdgeId h) const { return gap_[h] != 0; }
  void set_gap_after(HalfEdgeId h, bool gap) { gap_[h] = gap ? 1 : 0; }
  bool is_frontier(VertexId v) const { return frontier_[v] != 0 || gap_count_at(v) > 0; }
  // Marks v as frontier with unknown gap positions: every slot becomes a gap.
  void mark_frontier(VertexId v);
  std::vector<VertexId> frontier() const;

  long label(VertexId v) const { return label_[v]; }
  long halfedge_label(HalfEdgeId h) const { return he_label_[h]; }
  void set_halfedge_label(HalfEdgeId h, long label) { he_label_[h] = label; }
  std::optional<VertexId> find_label(long label) const;

  const std::optional<FaceDegree>& uniform_hint() const { return uniform_hint_; }
  void set_uniform_hint(std::optional<FaceDegree> hint) { uniform_hint_ = hint; }
  // Degree hint for the open face segment starting with half-edge h.
  void set_segment_hint(HalfEdgeId h, FaceDegree hint) { segment_hints_[h] = hint; }
  const std::map<HalfEdgeId, FaceDegree>& segment_hints() const { return segment_hints_; }

  HalfEdge halfedge(HalfEdgeId h) const { return {h, tail(h), twin(h)}; }
  bool has_edge(VertexId u, VertexId v) const;
  HalfEdgeId find_halfedge(VertexId u, VertexId v) const;
  bool is_simple() const;
  bool is_connected() const;
  bool is_closed() const { return frontier().empty(); }
  // Throws InputError describing the first violated structural invariant.
  void validate() const;

private:
  int gap_count_at(VertexId v) const;
  void link_after(HalfEdgeId h, VertexId v, HalfEdgeId after);

  std::vector<HalfEdgeId> first_;
  std::vector<int> degree_;
  std::vector<long> label_;
  std::vector<char> frontier_;
  std::vector<VertexId> tail_;
  std::vector<HalfEdgeId> next_;
  std::vector<HalfEdgeId> prev_;
  std::vector<char> gap_;
  std::vector<long> he_label_;
  std::map<long, VertexId> by_label_;
  std::optional<FaceDegree> uniform_hint_;
  std::map<HalfEdgeId, FaceDegree> segment_hints_;
};

// Induced sub-map on `keep` with rotations restricted to surviving half-edges.
// With truncate = true the removed slots become gaps (a ball of the same
// graph); otherwise the result is a standalone planar graph. new_to_old, if
// given, receives the original id of every new vertex.
CombinatorialMap induced_submap(const CombinatorialMap& map, const std::vector<VertexId>& keep,
                                bool truncate, std::vector<VertexId>* new_to_old = nullptr);

struct Corner {
  VertexId vertex;
  FaceId face;
  int multiplicity;
};

struct FaceOrbit {
  FaceId id;
  std::vector<HalfEdgeId> walk;
  FaceDegree degree;
  bool complete;

  int length() const { return static_cast<int>(walk.size()); }
};

struct FaceTable {
  std::vector<FaceOrbit> faces;
  std::vector<FaceId> face_of;  // per half-edge
  std::vector<Corner> corners;
  std::vector<std::vector<int>> corners_at_vertex;  // indices into corners
  std::vector<std::vector<int>> corners_of_face;

  int face_count() const { return static_cast<int>(faces.size()); }
  // Face owning the corner of tail(h) between h and its rotation successor.
  FaceId corner_face(const CombinatorialMap& map, HalfEdgeId h) const {
    return face_of[map.rot_next(h)];
  }
  // Distinct vertices on the materialized part of a face walk.
  std::vector<VertexId> face_vertices(const CombinatorialMap& map, FaceId f) const;
};

// Orbits of next(u->v) = rot_next(v->u). Transitions across a gap are cut,
// so each face of a truncated map is either a closed orbit (complete) or one
// or more open segments (incomplete, degree from hints).
FaceTable trace_faces(const CombinatorialMap& map);

std::vector<int> bfs_distances(const CombinatorialMap& map, const std::vector<VertexId>& sources);

struct BallDecomposition {
  VertexId root;
  int radius;
  std::vector<int> dist;  // per vertex, -1 when unreachable
  std::vector<std::vector<VertexId>> spheres;
  std::vector<std::vector<FaceId>> boundary_faces;  // faces meeting B_k and its complement

  int ball_size(int k) const;
};

// Faithful ball: every vertex at depth < n must be interior.
BallDecomposition ball(const CombinatorialMap& map, const FaceTable& faces, VertexId v0, int n);

// Largest n such that B_n(sources) is faithful in map.
int faithful_radius(const CombinatorialMap& map, const std::vector<VertexId>& sources);

}  // namespace curvagraph
