#pragma once

#include "curvagraph/exact_linalg.hpp"
#include "curvagraph/map.hpp"
#include "curvagraph/metric.hpp"
#include "curvagraph/rational.hpp"

#include <Eigen/Sparse>

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace curvagraph {

enum class LaplacianKind { combinatorial, normalized };
std::string kind_name(LaplacianKind kind);

// Dirichlet restriction to a set of interior vertices: functions vanish
// outside the domain, degrees keep all neighbors. The normalized Laplacian is
// given in its symmetric form D^{-1/2} (D - A) D^{-1/2}, which is unitarily
// equivalent to the operator on the degree-weighted space.
struct DirichletMatrix {
  LaplacianKind kind = LaplacianKind::combinatorial;
  std::vector<VertexId> domain;
  Eigen::SparseMatrix<double> matrix;
};
DirichletMatrix dirichlet_laplacian(const CombinatorialMap& map, const std::vector<VertexId>& domain,
                                    LaplacianKind kind);
// Domain B_radius(v0); needs a ball faithful to radius + 1.
DirichletMatrix dirichlet_laplacian_ball(const CombinatorialMap& map, VertexId v0, int radius, LaplacianKind kind);

struct EigenResult {
  std::vector<double> values;  // ascending
  double residual = 0;         // max ||Mx - lambda x|| over the returned pairs
  double norm = 0;             // Gershgorin bound on ||M||
  int iterations = 0;
  std::string method;          // "dense" (with multiplicity) or "lanczos" (distinct Ritz values)
};
// k smallest eigenvalues of a symmetric matrix. Throws PreconditionError when
// Lanczos does not reach residual <= tol * ||M||.
EigenResult smallest_eigenvalues(const Eigen::SparseMatrix<double>& m, int k, double tol = 1e-10);
double bottom_of_spectrum(const Eigen::SparseMatrix<double>& m, double tol = 1e-10);

// a + b sqrt(radicand), radicand squarefree (up to trial division by primes below 10^5).
struct QuadraticSurd {
  Rational a, b;
  BigInt radicand{1};

  double value() const;
  std::string str() const;
  friend bool operator==(const QuadraticSurd&, const QuadraticSurd&) = default;
};
// p (1 - sqrt(1 - alpha^2)); p = 1 gives the bound for the normalized Laplacian.
QuadraticSurd cheeger_spectral_bound(const Rational& alpha, long p);

struct SpectralRow {
  int radius = 0;
  long domain_size = 0;
  double bottom_combinatorial = 0, bottom_normalized = 0;
  bool combinatorial_ok = true, normalized_ok = true;
};
struct SpectralReport {
  VertexId root = 0;
  Rational alpha_lower;
  long p_inf = 0;
  QuadraticSurd bound_combinatorial, bound_normalized;
  std::vector<SpectralRow> rows;

  bool bounds_hold() const;
  bool nonincreasing(double tol = 1e-9) const;
};
// alphaLower from the curvature bounds on the materialized interior; Dirichlet
// bottoms on B_r(v0) for every r in radii.
SpectralReport verify_spectral_bounds(const CombinatorialMap& map, const FaceTable& faces, VertexId v0,
                                      const std::vector<int>& radii);

// Dirichlet spectrum of the combinatorial Laplacian on the annulus r < d <= R
// (r = -1: the ball B_R) of the tree whose vertices at distance d have degree
// base + slope*d. The operator splits into Jacobi matrices on levels k..R with
// diagonal deg_n and off-diagonal sqrt(children_n); `sector` is k.
struct RadialEigenvalue {
  double value;
  int sector;
};
std::vector<RadialEigenvalue> radial_tree_spectrum(int base, int slope, int r, int R);

struct EssentialProxyRow {
  int r = 0;
  std::vector<double> smallest;  // distinct values, ascending
};
// k smallest distinct Dirichlet eigenvalues on r < d <= R for each r.
std::vector<EssentialProxyRow> essential_spectrum_proxy(int base, int slope, const std::vector<int>& radii, int R,
                                                        int k);

// a(v, w) nonzero exactly for neighbors, arbitrary diagonal. Parallel edges
// contribute one coefficient each; coefficient() sums them.
class NearestNeighborOperator {
public:
  explicit NearestNeighborOperator(const CombinatorialMap& map);
  static NearestNeighborOperator laplacian(const CombinatorialMap& map);
  // Random nonzero rationals num/den with |num|, den in 1..9; diagonal may be 0.
  static NearestNeighborOperator random(const CombinatorialMap& map, std::uint64_t seed, bool symmetric = false);

  int vertex_count() const { return static_cast<int>(diag_.size()); }
  const Rational& diagonal(VertexId v) const { return diag_[v]; }
  void set_diagonal(VertexId v, Rational value) { diag_[v] = std::move(value); }
  // Coefficient on the half-edge h, i.e. a(tail h, head h).
  const Rational& halfedge_coefficient(HalfEdgeId h) const { return coef_[h]; }
  void set_halfedge_coefficient(HalfEdgeId h, Rational value) { coef_[h] = std::move(value); }
  Rational coefficient(VertexId v, VertexId w) const;
  // Entries of A phi; rows of frontier vertices miss the absent neighbors.
  std::vector<Rational> apply(const std::vector<Rational>& phi) const;
  bool is_symmetric() const;
  // Throws InputError when a coefficient on an edge is zero.
  void validate() const;

private:
  const CombinatorialMap* map_;
  std::vector<Rational> diag_;
  std::vector<Rational> coef_;
};

struct SparseBlock {
  int rows = 0, cols = 0;
  std::vector<std::tuple<int, int, Rational>> entries;  // (i, j, value), summed on insertion order

  RationalMatrix dense() const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  int nonzeros_in_row(int i) const;
};

// Block tridiagonal form over the aligned sphere enumeration:
// E_n(i,j) = a(v_i^{(n+1)}, v_j^{(n)}), E'_n(i,j) = a(v_i^{(n)}, v_j^{(n+1)}),
// D_n(i,j) = a(v_i^{(n)}, v_j^{(n)}), and
// (A phi)_n = E_{n-1} phi_{n-1} + D_n phi_n + E'_n phi_{n+1}.
struct PolarOperator {
  SphereEnumeration spheres;
  int horizon = 0;
  std::vector<int> position;  // index of each vertex within its sphere, -1 outside B_horizon
  std::vector<SparseBlock> D, E, Ep;  // n = 0..horizon-1
};
PolarOperator polar_decompose(const CombinatorialMap& map, const FaceTable& faces, const NearestNeighborOperator& A,
                              VertexId v0, int horizon);

struct ReconstructionCheck {
  int trials = 0;
  long rows_checked = 0;
  long mismatches = 0;

  bool exact() const { return mismatches == 0; }
};
// Compares the block form with A phi on B_{horizon-1} for random phi supported in B_horizon.
ReconstructionCheck verify_reconstruction(const PolarOperator& polar, const NearestNeighborOperator& A, int trials = 10,
                                          std::uint64_t seed = 1);

struct EStructureLevel {
  int n = 0;
  int rows = 0, cols = 0;
  bool columns_nonzero = true;   // every column has a nonzero entry
  bool rows_one_or_two = true;   // every row has one or two nonzero entries
  bool pairs_succeeding = true;  // two nonzeros sit in cyclically succeeding columns
  RankCertificate rank;
};
struct EStructureReport {
  std::vector<EStructureLevel> levels;

  bool structure_holds() const;
  bool all_injective() const;
};
EStructureReport check_E_structure(const PolarOperator& polar);

struct Eigenfunction {
  double lambda = 0;
  std::optional<Rational> exact_lambda;
  std::vector<std::vector<Rational>> exact_basis;  // over the search domain, when lambda is rational
  std::vector<std::vector<double>> basis;
};
struct EigenfunctionSearch {
  int horizon = 0;
  std::vector<VertexId> domain;  // B_{horizon-2}(v0), ascending ids
  long constraint_rows = 0;      // |B_{horizon-1}|
  int invariant_dimension = 0;   // largest A-invariant subspace meeting the outer constraints
  std::string method;            // "mod-p" certificate or "exact"
  int complex_skipped = 0;
  std::vector<Eigenfunction> found;
};
// All (lambda, phi) with phi != 0 supported in B_{horizon-2}(v0) and
// (A phi)(v) = lambda phi(v) on B_{horizon-1}(v0).
EigenfunctionSearch finitely_supported_eigenfunctions(const CombinatorialMap& map, const NearestNeighborOperator& A,
                                                      VertexId v0, int horizon);

}  // namespace curvagraph
