#include "curvagraph/errors.hpp"
#include "curvagraph/generators.hpp"
#include "curvagraph/spectral.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

using namespace curvagraph;

namespace {

Eigen::MatrixXd dense(const DirichletMatrix& d) { return Eigen::MatrixXd(d.matrix); }

// vertices of the line at positions -1, 0, 1
std::vector<VertexId> middle_path(const CombinatorialMap& line) {
  return {*line.find_label(2), *line.find_label(0), *line.find_label(1)};
}

}  // namespace

TEST_CASE("Dirichlet matrices") {
  const auto tree = regular_tree_ball(3, 2);
  const auto one = dirichlet_laplacian(tree, {0}, LaplacianKind::combinatorial);
  CHECK(dense(one)(0, 0) == 3);

  const auto line = line_ball(3);
  const auto comb = dirichlet_laplacian(line, middle_path(line), LaplacianKind::combinatorial);
  const auto norm = dirichlet_laplacian(line, middle_path(line), LaplacianKind::normalized);
  const auto d = dense(comb), n = dense(norm);
  REQUIRE(d.rows() == 3);
  // tridiagonal in path order, whatever order the domain is stored in
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const VertexId a = comb.domain[i], b = comb.domain[j];
      const double e = i == j ? 2 : line.has_edge(a, b) ? -1 : 0;
      CHECK(d(i, j) == e);
      CHECK(n(i, j) == doctest::Approx(e / 2));
    }

  CHECK_THROWS_AS(dirichlet_laplacian(tree, {0, 1, 4}, LaplacianKind::combinatorial), PreconditionError);
}

TEST_CASE("eigensolvers") {
  Eigen::SparseMatrix<double> one(1, 1);
  one.insert(0, 0) = 3;
  CHECK(bottom_of_spectrum(one) == doctest::Approx(3));

  // Lanczos against the dense solver on a matrix above the dense cutoff
  const auto tree = regular_tree_ball(3, 10);
  const auto d = dirichlet_laplacian_ball(tree, 0, 9, LaplacianKind::combinatorial);
  REQUIRE(d.domain.size() > 800);
  const auto lz = smallest_eigenvalues(d.matrix, 3);
  CHECK(lz.method == "lanczos");
  CHECK(lz.residual <= 1e-8);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(d.matrix), Eigen::EigenvaluesOnly);
  CHECK(lz.values[0] == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
}

TEST_CASE("tree bottoms") {
  const double bound = 3 - 2 * std::sqrt(2.0);
  const auto tree = regular_tree_ball(3, 9);
  double prev = 1e9;
  for (int r = 1; r <= 8; ++r) {
    const double b = bottom_of_spectrum(dirichlet_laplacian_ball(tree, 0, r, LaplacianKind::combinatorial).matrix);
    CHECK(b >= bound);
    CHECK(b <= prev + 1e-12);
    prev = b;
  }
  CHECK(prev <= bound + 0.15);
  double radial = 1e9;
  for (const auto& e : radial_tree_spectrum(3, 0, -1, 8)) radial = std::min(radial, e.value);
  CHECK(radial == doctest::Approx(prev).epsilon(1e-10));
}

TEST_CASE("flat grid bottoms decay") {
  const auto grid = pq_ball(4, 4, 9);
  double prev = 1e9;
  for (int r = 1; r <= 8; ++r) {
    const double b = bottom_of_spectrum(dirichlet_laplacian_ball(grid, 0, r, LaplacianKind::combinatorial).matrix);
    CHECK(b < prev);
    prev = b;
  }
  CHECK(prev < 0.15);
}

TEST_CASE("radial decomposition matches the dense spectrum") {
  const auto tree = radial_tree_ball(3, 1, 5);
  const auto d = dirichlet_laplacian_ball(tree, 0, 4, LaplacianKind::combinatorial);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(d.matrix), Eigen::EigenvaluesOnly);
  std::vector<double> dense_values(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::vector<double> radial;
  for (const auto& e : radial_tree_spectrum(3, 1, -1, 4)) radial.push_back(e.value);
  std::sort(radial.begin(), radial.end());
  for (double x : radial) {
    const auto it = std::lower_bound(dense_values.begin(), dense_values.end(), x - 1e-9);
    REQUIRE(it != dense_values.end());
    CHECK(*it == doctest::Approx(x).epsilon(1e-9));
  }
  for (double x : dense_values) {
    const auto it = std::lower_bound(radial.begin(), radial.end(), x - 1e-9);
    REQUIRE(it != radial.end());
    CHECK(*it == doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("Cheeger spectral bound in radical form") {
  const auto b = cheeger_spectral_bound(Rational(1, 3), 3);
  CHECK(b == QuadraticSurd{3, -2, 2});
  CHECK(b.str() == "3 - 2*sqrt(2)");
  CHECK(std::abs(b.value() - (3 - 2 * std::sqrt(2.0))) < 1e-12);
  const auto n = cheeger_spectral_bound(Rational(1, 15), 1);
  CHECK(n.value() == doctest::Approx(1 - std::sqrt(224.0 / 225.0)));
  CHECK(cheeger_spectral_bound(Rational(0), 4).value() == 0);
}

TEST_CASE("spectral bounds hold on {3,7}") {
  const auto m = pq_ball(3, 7, 6);
  const auto rep = verify_spectral_bounds(m, trace_faces(m), 0, {1, 2, 3, 4});
  CHECK(rep.alpha_lower == Rational(1, 9));
  CHECK(rep.bounds_hold());
  CHECK(rep.nonincreasing());
}

TEST_CASE("essential spectrum proxy") {
  const auto rows = essential_spectrum_proxy(3, 1, {4, 6, 8}, 40, 5);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (int j = 0; j < 5; ++j) CHECK(rows[i].smallest[j] > rows[i - 1].smallest[j]);
  const auto flat = essential_spectrum_proxy(3, 0, {4, 6, 8}, 40, 1);
  for (const auto& r : flat) CHECK(r.smallest[0] < 0.3);
}

TEST_CASE("nearest neighbor operators") {
  const auto m = pq_ball(7, 3, 3);
  const auto lap = NearestNeighborOperator::laplacian(m);
  CHECK(lap.is_symmetric());
  CHECK(lap.diagonal(0) == 7);
  const VertexId w = m.neighbors(0)[0];
  CHECK(lap.coefficient(0, w) == -1);
  const auto r = NearestNeighborOperator::random(m, 5, false);
  r.validate();
  const auto s = NearestNeighborOperator::random(m, 5, true);
  CHECK(s.is_symmetric());
  auto broken = lap;
  broken.set_halfedge_coefficient(0, 0);
  CHECK_THROWS_AS(broken.validate(), InputError);
}

TEST_CASE("polar decomposition reconstructs the operator") {
  for (const auto& m : {pq_ball(7, 3, 6), regular_tree_ball(3, 6), pq_ball(4, 4, 6)}) {
    const auto faces = trace_faces(m);
    for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
      const auto A = seed == 0 ? NearestNeighborOperator::laplacian(m) : NearestNeighborOperator::random(m, seed);
      const auto P = polar_decompose(m, faces, A, 0, 5);
      CHECK(verify_reconstruction(P, A, 4, seed).exact());
      const auto es = check_E_structure(P);
      CHECK(es.structure_holds());
      CHECK(es.all_injective());
    }
  }
}

TEST_CASE("tree E blocks have one nonzero per row") {
  const auto tree = regular_tree_ball(3, 6);
  const auto A = NearestNeighborOperator::laplacian(tree);
  const auto P = polar_decompose(tree, trace_faces(tree), A, 0, 5);
  for (const auto& E : P.E)
    for (int i = 0; i < E.rows; ++i) CHECK(E.nonzeros_in_row(i) == 1);
}

TEST_CASE("finitely supported eigenfunctions") {
  const auto hub = octahedron_hub(4);
  const auto s = finitely_supported_eigenfunctions(hub, NearestNeighborOperator::laplacian(hub), 0, 4);
  bool six = false;
  for (const auto& e : s.found) {
    REQUIRE(e.exact_lambda);
    for (const auto& phi : e.exact_basis) {
      // A phi = lambda phi on the whole map
      std::vector<Rational> full(hub.vertex_count());
      for (std::size_t j = 0; j < s.domain.size(); ++j) full[s.domain[j]] = phi[j];
      const auto Aphi = NearestNeighborOperator::laplacian(hub).apply(full);
      for (VertexId v = 0; v < hub.vertex_count(); ++v)
        if (!hub.is_frontier(v)) CHECK(Aphi[v] == *e.exact_lambda * full[v]);
    }
    if (*e.exact_lambda == 6) {
      six = true;
      REQUIRE(e.exact_basis.size() == 1);
      const auto& phi = e.exact_basis[0];
      std::vector<Rational> cycle(4), rest;
      for (std::size_t j = 0; j < s.domain.size(); ++j) {
        if (s.domain[j] < 4) cycle[s.domain[j]] = phi[j];
        else CHECK(phi[j] == 0);
      }
      CHECK(cycle[0] != 0);
      for (int i = 0; i < 4; ++i) CHECK(cycle[i] == (i % 2 == 0 ? cycle[0] : -cycle[0]));
    }
  }
  CHECK(six);

  const auto m = pq_ball(7, 3, 6);
  CHECK(finitely_supported_eigenfunctions(m, NearestNeighborOperator::laplacian(m), 0, 6).found.empty());
  const auto tree = regular_tree_ball(3, 6);
  auto A = NearestNeighborOperator::laplacian(tree);
  for (VertexId v = 0; v < tree.vertex_count(); ++v) A.set_diagonal(v, Rational(v % 5, 3));
  CHECK(finitely_supported_eigenfunctions(tree, A, 0, 6).found.empty());
}
