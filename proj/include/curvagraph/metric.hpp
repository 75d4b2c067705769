#pragma once

#include "curvagraph/map.hpp"
#include "curvagraph/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvagraph {

// Vertices v with d(v0,v) <= horizon all of whose neighbors are not farther
// from v0. Needs a ball faithful to horizon + 1.
std::vector<VertexId> cut_locus(const CombinatorialMap& map, VertexId v0, int horizon);

// Boundary faces of B_n(v0) in the cyclic order met when walking around the
// ball, and S_n ordered by first visit along the same walk.
struct BoundaryWalk {
  std::vector<FaceId> faces;
  std::vector<VertexId> sphere_order;
};
BoundaryWalk boundary_walk(const CombinatorialMap& map, const FaceTable& faces,
                           const std::vector<int>& dist, int n, VertexId v0);

struct SphereEnumeration {
  VertexId root;
  std::vector<std::vector<VertexId>> levels;  // aligned cyclic enumerations of S_0..S_N
  std::vector<char> cyclic;                   // per level: succeeding vertices share a boundary face
  std::vector<int> dist;
};
// Cyclic enumerations of S_0..S_N, shifted level by level so that the first
// vertex of S_{n+1} is the first one adjacent to the first vertex of S_n.
SphereEnumeration enumerate_spheres(const CombinatorialMap& map, const FaceTable& faces, VertexId v0, int N);

enum class Verdict { pass, fail, undecided };
std::string verdict_name(Verdict v);

struct AdmissibilityProperty {
  int index;
  Verdict verdict = Verdict::pass;
  int levels_checked = 0;
  std::string detail;  // first violation or reason for undecided
};

struct AdmissibilityReport {
  VertexId root;
  int horizon;
  std::vector<AdmissibilityProperty> properties;  // (1)..(5)

  bool all_pass() const;
};
AdmissibilityReport check_admissibility(const CombinatorialMap& map, const FaceTable& faces, VertexId v0,
                                        int horizon);

struct Bigon {
  std::vector<VertexId> p1, p2;
  std::vector<VertexId> interior;
};

struct BigonSearch {
  int horizon = 0;
  int anchors = 0;
  long endpoint_pairs = 0;
  long bigons = 0;          // unordered pairs of distinct geodesics
  long minimal = 0;
  long nonempty = 0;
  long skipped_pairs = 0;   // geodesic count above the cap
  std::vector<Bigon> minimal_bigons;
};
// Exhaustive over endpoint pairs (x, y) with x in B_a(root), a chosen so that
// every geodesic of length <= horizon from x stays inside the faithful region.
BigonSearch minimal_bigons(const CombinatorialMap& map, const FaceTable& faces, int horizon, VertexId root = 0,
                           long geodesic_cap = 4096, bool keep_empty = true);

// Vertices enclosed by the simple closed walk p1 + reverse(p2).
std::vector<VertexId> bigon_interior(const CombinatorialMap& map, const FaceTable& faces,
                                     const std::vector<VertexId>& p1, const std::vector<VertexId>& p2);

struct GrowthReport {
  VertexId root;
  int horizon;
  std::vector<long> sphere_sizes;
  std::vector<long> ball_sizes;
  Rational kappa_v;       // sup of vertex curvature on the certified region
  std::optional<long> q;  // sup face degree, nullopt for infinity
  int p = 0;              // sup vertex degree
  Rational lower_factor;  // -2 kappa q/(q-1)
  std::vector<char> inequality;  // per n >= 1: s_n >= lower_factor |B_{n-1}|
  double mu_estimate = 0;        // (1/N) log s_N
  double mu_ratio = 0;           // log(s_N / s_{N-1})
  double mu_lower = 0, mu_upper = 0;

  bool inequality_holds() const;
  bool mu_in_bounds() const { return mu_estimate >= mu_lower && mu_estimate <= mu_upper; }
  // The last-step ratio converges faster; (1/N) log s_N overshoots when s_n ~ c e^{mu n} with c > 1.
  bool ratio_in_bounds() const { return mu_ratio >= mu_lower - 1e-12 && mu_ratio <= mu_upper + 1e-12; }
};
GrowthReport growth_check(const CombinatorialMap& map, const FaceTable& faces, VertexId v0, int horizon);

}  // namespace curvagraph
