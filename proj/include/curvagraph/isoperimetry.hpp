#pragma once

#include "curvagraph/map.hpp"
#include "curvagraph/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace curvagraph {

// Calls visit once for every connected W within U with 1 <= |W| <= k. Each
// set is grown from its smallest member (exclusive-neighborhood extension),
// so no set is produced twice. Returns the number of sets; throws
// PreconditionError once more than cap sets would be produced.
long for_each_connected_set(const CombinatorialMap& map, const std::vector<VertexId>& U, int k,
                            const std::function<void(const std::vector<VertexId>&)>& visit,
                            long cap = 200'000'000);

struct SetMeasure {
  long boundary = 0;  // |d_E W|, edges leaving W (missing frontier edges excluded: U is interior)
  long volume = 0;    // sum of degrees
  long size = 0;
};
SetMeasure measure_set(const CombinatorialMap& map, const std::vector<VertexId>& W);

struct CheegerUpper {
  int k = 0;
  std::vector<VertexId> region;
  long sets = 0;
  Rational alpha_upper, beta_upper;
  std::vector<VertexId> alpha_witness, beta_witness;
};
// Exact minima of |d_E W|/vol(W) and |d_E W|/|W| over connected W in U, |W| <= k.
CheegerUpper cheeger_bruteforce(const CombinatorialMap& map, const std::vector<VertexId>& U, int k,
                                long cap = 200'000'000);

// Curvature lower bounds for alpha_U and beta_U. Degrees are given as
// optionals where nullopt stands for infinity.
struct CheegerLower {
  long p_inf = 0;
  std::optional<long> p_sup;
  std::optional<long> q_inf, q_sup;
  Rational kappa_sup;             // sup kappa_V(v) over U
  Rational kappa_over_degree_sup; // sup kappa_V(v)/|v| over U
  bool defined = true;
  std::string reason;             // why (1) is undefined
  Rational alpha, beta;           // 1 - (1/p)(2q/(q-2)),  p - 2q/(q-2)
  std::optional<Rational> C;      // (1 + 2/(Q-2))(1 + 2/((P-2)(Q-2)-2))
  std::optional<Rational> alpha3, beta3;  // -2C sup kappa/|v|,  -2C kappa_V

  Rational best_alpha() const;
  Rational best_beta() const;
};
CheegerLower cheeger_lower_bounds_from_data(long p_inf, std::optional<long> p_sup, std::optional<long> q_inf,
                                            std::optional<long> q_sup, const Rational& kappa_sup,
                                            const Rational& kappa_over_degree_sup);
// Throws PreconditionError unless U is interior, all face degrees at U are
// determined and kappa_V <= 0 on U.
CheegerLower cheeger_lower_bounds(const CombinatorialMap& map, const FaceTable& faces,
                                  const std::vector<VertexId>& U);

struct CheegerEstimate {
  CheegerUpper upper;
  CheegerLower lower;

  bool consistent() const;  // lower <= upper for both constants
};
CheegerEstimate cheeger_estimate(const CombinatorialMap& map, const FaceTable& faces, const std::vector<VertexId>& U,
                                 int k);

struct ProxyPoint {
  int r = 0;
  long region_size = 0;  // materialized vertices of V \ B_r used; 0 for the closed form
  CheegerLower lower;
};
// Lower bounds on U = V \ B_r(v0), restricted to materialized interior vertices.
std::vector<ProxyPoint> cheeger_at_infinity_proxy(const CombinatorialMap& map, const FaceTable& faces, VertexId v0,
                                                  const std::vector<int>& radii);
// Same for the tree whose vertices at distance d have degree base + slope*d,
// from its shell data (the automorphism group is transitive on every sphere).
std::vector<ProxyPoint> cheeger_at_infinity_proxy_radial(int base, int slope, const std::vector<int>& radii);

// |d_E W| >= vol(W) - (2q_U/(q_U-2)) (|W| + c(W) - 2) for connected W in U,
// |W| <= k, with c(W) the number of components of G \ W.
struct IsoperimetricCheck {
  Rational t;  // 2q_U/(q_U-2)
  long sets = 0;
  long checked = 0;
  long small_c = 0;  // checked sets with c(W) <= 2
  long violations = 0;
  std::vector<std::vector<VertexId>> counterexamples;  // first few
  bool one_ended = false;

  bool holds() const { return violations == 0; }
};
IsoperimetricCheck check_isoperimetric_inequality(const CombinatorialMap& map, const FaceTable& faces,
                                                  const std::vector<VertexId>& U, int k);

// Number of components of the materialized map minus W. Components that
// reach the frontier are merged when the map is one-ended (no infinite faces).
int complement_components(const CombinatorialMap& map, const FaceTable& faces, const std::vector<VertexId>& W);

}  // namespace curvagraph
