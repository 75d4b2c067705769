#include "curvagraph/spectral.hpp"

#include "curvagraph/errors.hpp"
#include "curvagraph/isoperimetry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace curvagraph {

namespace {

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

int proper_degree(const CombinatorialMap& map, VertexId v) {
  int d = 0;
  for (VertexId w : map.neighbors(v)) d += w != v;
  return d;
}

double gershgorin(const Eigen::SparseMatrix<double>& m) {
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) sums[it.row()] += std::abs(it.value());
  return m.rows() ? sums.maxCoeff() : 0.0;
}

Rational random_nonzero(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mag(1, 9), sign(0, 1);
  const int num = mag(rng) * (sign(rng) ? 1 : -1);
  return Rational(num, mag(rng));
}

std::string rational_text(const Rational& r) { return to_string(r); }

}  // namespace

std::string kind_name(LaplacianKind kind) {
  return kind == LaplacianKind::combinatorial ? "combinatorial" : "normalized";
}

DirichletMatrix dirichlet_laplacian(const CombinatorialMap& map, const std::vector<VertexId>& domain_in,
                                    LaplacianKind kind) {
  DirichletMatrix out;
  out.kind = kind;
  out.domain = sorted_unique(domain_in);
  std::vector<int> index(map.vertex_count(), -1);
  for (std::size_t i = 0; i < out.domain.size(); ++i) {
    const VertexId v = out.domain[i];
    if (v < 0 || v >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v));
    if (map.is_frontier(v)) throw PreconditionError("domain contains frontier vertex " + std::to_string(map.label(v)));
    index[v] = static_cast<int>(i);
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < out.domain.size(); ++i) {
    const VertexId v = out.domain[i];
    const double dv = proper_degree(map, v);
    if (dv == 0) throw PreconditionError("isolated vertex in the domain");
    triplets.emplace_back(i, i, kind == LaplacianKind::combinatorial ? dv : 1.0);
    for (VertexId w : map.neighbors(v)) {
      if (w == v || index[w] < 0) continue;
      const double value = kind == LaplacianKind::combinatorial ? -1.0 : -1.0 / std::sqrt(dv * proper_degree(map, w));
      triplets.emplace_back(i, index[w], value);
    }
  }
  const int n = static_cast<int>(out.domain.size());
  out.matrix.resize(n, n);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

DirichletMatrix dirichlet_laplacian_ball(const CombinatorialMap& map, VertexId v0, int radius, LaplacianKind kind) {
  if (v0 < 0 || v0 >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v0));
  if (!map.is_closed() && faithful_radius(map, {v0}) < radius + 1)
    throw PreconditionError("ball of radius " + std::to_string(radius + 1) + " is not faithful");
  const auto d = bfs_distances(map, {v0});
  std::vector<VertexId> domain;
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (d[v] >= 0 && d[v] <= radius) domain.push_back(v);
  return dirichlet_laplacian(map, domain, kind);
}

EigenResult smallest_eigenvalues(const Eigen::SparseMatrix<double>& m, int k, double tol) {
  if (m.rows() != m.cols()) throw InputError("matrix is not square");
  if (k < 1) throw InputError("k must be positive");
  const int n = static_cast<int>(m.rows());
  EigenResult out;
  out.norm = gershgorin(m);
  if (n == 0) return out;
  k = std::min(k, n);
  if (n <= 800) {
    const Eigen::MatrixXd dense(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) throw PreconditionError("dense eigensolver failed");
    out.method = "dense";
    for (int i = 0; i < k; ++i) {
      out.values.push_back(es.eigenvalues()[i]);
      const Eigen::VectorXd x = es.eigenvectors().col(i);
      out.residual = std::max(out.residual, (dense * x - es.eigenvalues()[i] * x).norm());
    }
    return out;
  }

  out.method = "lanczos";
  const int max_steps = std::min<long>(n, std::max<long>(300, std::min<long>(3000, 60'000'000L / n)));
  std::vector<Eigen::VectorXd> Q;
  std::vector<double> alpha, beta;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q[i] = uni(rng);
  q.normalize();
  Q.push_back(q);
  for (int j = 0; j < max_steps; ++j) {
    Eigen::VectorXd w = m * Q[j];
    const double a = Q[j].dot(w);
    w -= a * Q[j];
    if (j > 0) w -= beta[j - 1] * Q[j - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : Q) w -= qi.dot(w) * qi;
    const double b = w.norm();
    alpha.push_back(a);
    beta.push_back(b);
    const bool exhausted = b <= 1e-12 * std::max(out.norm, 1.0) || j + 1 == n;
    if ((j + 1) % 10 == 0 || exhausted || j + 1 == max_steps) {
      const int s = j + 1;
      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), s);
      Eigen::VectorXd sub = s > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), s - 1)) : Eigen::VectorXd();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const int want = std::min(k, s);
      double residual = 0;
      for (int i = 0; i < want; ++i) residual = std::max(residual, std::abs(b * es.eigenvectors()(s - 1, i)));
      if (residual <= tol * std::max(out.norm, 1.0) || exhausted) {
        out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + want);
        out.residual = residual;
        out.iterations = s;
        return out;
      }
      if (j + 1 == max_steps)
        throw PreconditionError("Lanczos did not converge, residual " + std::to_string(residual));
    }
    Q.push_back(w / b);
  }
  throw PreconditionError("Lanczos did not converge");
}

double bottom_of_spectrum(const Eigen::SparseMatrix<double>& m, double tol) {
  const auto r = smallest_eigenvalues(m, 1, tol);
  if (r.values.empty()) throw InputError("empty matrix");
  return r.values.front();
}

double QuadraticSurd::value() const {
  return to_double(a) + to_double(b) * std::sqrt(radicand.convert_to<double>());
}

std::string QuadraticSurd::str() const {
  if (b == 0 || radicand == 0) return rational_text(a);
  std::ostringstream os;
  const bool neg = b < 0;
  const Rational mag = neg ? Rational(-b) : b;
  if (a != 0) os << rational_text(a) << (neg ? " - " : " + ");
  else if (neg) os << "-";
  if (mag != 1) os << rational_text(mag) << "*";
  os << "sqrt(" << radicand.str() << ")";
  return os.str();
}

QuadraticSurd cheeger_spectral_bound(const Rational& alpha, long p) {
  const Rational x = 1 - alpha * alpha;
  if (x < 0) throw InputError("alpha must lie in [-1, 1]");
  QuadraticSurd s;
  s.a = p;
  BigInt c = boost::multiprecision::numerator(x) * boost::multiprecision::denominator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (c == 0) {
    s.b = 0;
    return s;
  }
  BigInt root = 1;
  for (long f = 2; f < 100000 && BigInt(f) * f <= c; ++f)
    while (c % (BigInt(f) * f) == 0) {
      c /= BigInt(f) * f;
      root *= f;
    }
  const BigInt r = boost::multiprecision::sqrt(c);
  if (r * r == c) {
    root *= r;
    c = 1;
  }
  // sqrt(x) = root sqrt(c) / den
  s.b = -Rational(p) * Rational(root) / Rational(den);
  s.radicand = c;
  if (c == 1) {
    s.a += s.b;
    s.b = 0;
  }
  return s;
}

bool SpectralReport::bounds_hold() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SpectralRow& r) { return r.combinatorial_ok && r.normalized_ok; });
}

bool SpectralReport::nonincreasing(double tol) const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].radius > rows[i - 1].radius &&
        (rows[i].bottom_combinatorial > rows[i - 1].bottom_combinatorial + tol ||
         rows[i].bottom_normalized > rows[i - 1].bottom_normalized + tol))
      return false;
  return true;
}

SpectralReport verify_spectral_bounds(const CombinatorialMap& map, const FaceTable& faces, VertexId v0,
                                      const std::vector<int>& radii) {
  SpectralReport rep;
  rep.root = v0;
  std::vector<VertexId> interior;
  for (VertexId v = 0; v < map.vertex_count(); ++v)
    if (!map.is_frontier(v)) interior.push_back(v);
  const CheegerLower lower = cheeger_lower_bounds(map, faces, interior);
  rep.alpha_lower = std::max(Rational(0), lower.best_alpha());
  rep.p_inf = lower.p_inf;
  rep.bound_combinatorial = cheeger_spectral_bound(rep.alpha_lower, rep.p_inf);
  rep.bound_normalized = cheeger_spectral_bound(rep.alpha_lower, 1);
  for (int r : radii) {
    SpectralRow row;
    row.radius = r;
    const auto comb = dirichlet_laplacian_ball(map, v0, r, LaplacianKind::combinatorial);
    const auto norm = dirichlet_laplacian_ball(map, v0, r, LaplacianKind::normalized);
    row.domain_size = static_cast<long>(comb.domain.size());
    row.bottom_combinatorial = bottom_of_spectrum(comb.matrix);
    row.bottom_normalized = bottom_of_spectrum(norm.matrix);
    row.combinatorial_ok = row.bottom_combinatorial >= rep.bound_combinatorial.value() - 1e-9;
    row.normalized_ok = row.bottom_normalized >= rep.bound_normalized.value() - 1e-9;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<RadialEigenvalue> radial_tree_spectrum(int base, int slope, int r, int R) {
  if (base < 2 || slope < 0) throw InputError("unsupported tree parameters");
  if (r < -1 || R <= r) throw InputError("need -1 <= r < R");
  auto degree = [&](int n) { return static_cast<double>(base) + static_cast<double>(slope) * n; };
  auto children = [&](int n) { return n == 0 ? degree(0) : degree(n) - 1; };
  std::vector<RadialEigenvalue> out;
  auto sector = [&](int k) {
    const int s = R - k + 1;
    Eigen::VectorXd diag(s), sub(std::max(s - 1, 0));
    for (int i = 0; i < s; ++i) diag[i] = degree(k + i);
    for (int i = 0; i + 1 < s; ++i) sub[i] = std::sqrt(children(k + i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    for (int i = 0; i < s; ++i) out.push_back({es.eigenvalues()[i], k});
  };
  const int first = r + 1;
  sector(first);
  for (int k = first + 1; k <= R; ++k)
    if (children(k - 1) >= 2) sector(k);
  std::sort(out.begin(), out.end(),
            [](const RadialEigenvalue& a, const RadialEigenvalue& b) { return a.value < b.value; });
  return out;
}

std::vector<EssentialProxyRow> essential_spectrum_proxy(int base, int slope, const std::vector<int>& radii, int R,
                                                        int k) {
  std::vector<EssentialProxyRow> out;
  for (int r : radii) {
    EssentialProxyRow row;
    row.r = r;
    for (const auto& e : radial_tree_spectrum(base, slope, r, R)) {
      if (!row.smallest.empty() && std::abs(e.value - row.smallest.back()) <= 1e-9 * std::max(1.0, e.value)) continue;
      row.smallest.push_back(e.value);
      if (static_cast<int>(row.smallest.size()) == k) break;
    }
    out.push_back(std::move(row));
  }
  return out;
}

NearestNeighborOperator::NearestNeighborOperator(const CombinatorialMap& map)
    : map_(&map), diag_(map.vertex_count()), coef_(map.halfedge_count()) {}

NearestNeighborOperator NearestNeighborOperator::laplacian(const CombinatorialMap& map) {
  NearestNeighborOperator a(map);
  for (VertexId v = 0; v < map.vertex_count(); ++v) a.diag_[v] = map.degree(v);
  for (HalfEdgeId h = 0; h < map.halfedge_count(); ++h) a.coef_[h] = -1;
  return a;
}

NearestNeighborOperator NearestNeighborOperator::random(const CombinatorialMap& map, std::uint64_t seed,
                                                        bool symmetric) {
  NearestNeighborOperator a(map);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  for (VertexId v = 0; v < map.vertex_count(); ++v) a.diag_[v] = Rational(num(rng), den(rng));
  for (HalfEdgeId h = 0; h < map.halfedge_count(); h += 2) {
    a.coef_[h] = random_nonzero(rng);
    a.coef_[h + 1] = symmetric ? a.coef_[h] : random_nonzero(rng);
  }
  return a;
}

Rational NearestNeighborOperator::coefficient(VertexId v, VertexId w) const {
  Rational sum = v == w ? diag_[v] : Rational(0);
  for (HalfEdgeId h : map_->rotation(v))
    if (map_->head(h) == w) sum += coef_[h];
  return sum;
}

std::vector<Rational> NearestNeighborOperator::apply(const std::vector<Rational>& phi) const {
  if (static_cast<int>(phi.size()) != vertex_count()) throw InputError("dimension mismatch");
  std::vector<Rational> y(vertex_count());
  for (VertexId v = 0; v < vertex_count(); ++v) {
    if (phi[v] != 0) y[v] += diag_[v] * phi[v];
    for (HalfEdgeId h : map_->rotation(v)) {
      const Rational& x = phi[map_->head(h)];
      if (x != 0) y[v] += coef_[h] * x;
    }
  }
  return y;
}

bool NearestNeighborOperator::is_symmetric() const {
  for (HalfEdgeId h = 0; h < static_cast<HalfEdgeId>(coef_.size()); h += 2)
    if (coef_[h] != coef_[h + 1]) return false;
  return true;
}

void NearestNeighborOperator::validate() const {
  for (HalfEdgeId h = 0; h < static_cast<HalfEdgeId>(coef_.size()); ++h)
    if (coef_[h] == 0)
      throw InputError("zero coefficient on edge " + std::to_string(map_->label(map_->tail(h))) + "-" +
                       std::to_string(map_->label(map_->head(h))));
}

RationalMatrix SparseBlock::dense() const {
  RationalMatrix m(rows, cols);
  for (const auto& [i, j, v] : entries) m(i, j) += v;
  return m;
}

std::vector<Rational> SparseBlock::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != cols) throw InputError("dimension mismatch");
  std::vector<Rational> y(rows);
  for (const auto& [i, j, v] : entries)
    if (x[j] != 0) y[i] += v * x[j];
  return y;
}

int SparseBlock::nonzeros_in_row(int i) const {
  std::map<int, Rational> sums;
  for (const auto& [r, j, v] : entries)
    if (r == i) sums[j] += v;
  return static_cast<int>(std::count_if(sums.begin(), sums.end(), [](const auto& e) { return e.second != 0; }));
}

PolarOperator polar_decompose(const CombinatorialMap& map, const FaceTable& faces, const NearestNeighborOperator& A,
                              VertexId v0, int horizon) {
  if (horizon < 1) throw InputError("horizon must be positive");
  if (A.vertex_count() != map.vertex_count()) throw InputError("operator does not match the map");
  PolarOperator P;
  P.horizon = horizon;
  P.spheres = enumerate_spheres(map, faces, v0, horizon);
  const auto& L = P.spheres.levels;
  const auto& dist = P.spheres.dist;
  P.position.assign(map.vertex_count(), -1);
  for (const auto& level : L)
    for (std::size_t i = 0; i < level.size(); ++i) P.position[level[i]] = static_cast<int>(i);
  auto size = [&](int n) { return static_cast<int>(L[n].size()); };
  for (int n = 0; n < horizon; ++n) {
    P.D.push_back({size(n), size(n), {}});
    P.E.push_back({size(n + 1), size(n), {}});
    P.Ep.push_back({size(n), size(n + 1), {}});
  }
  for (int n = 0; n <= horizon; ++n)
    for (int i = 0; i < size(n); ++i) {
      const VertexId v = L[n][i];
      if (n < horizon) P.D[n].entries.emplace_back(i, i, A.diagonal(v));
      for (HalfEdgeId h : map.rotation(v)) {
        const VertexId w = map.head(h);
        const int m = dist[w];
        const Rational& c = A.halfedge_coefficient(h);
        if (m == n - 1) P.E[n - 1].entries.emplace_back(i, P.position[w], c);
        if (n == horizon) continue;
        if (m == n) P.D[n].entries.emplace_back(i, P.position[w], c);
        if (m == n + 1) P.Ep[n].entries.emplace_back(i, P.position[w], c);
      }
    }
  return P;
}

ReconstructionCheck verify_reconstruction(const PolarOperator& polar, const NearestNeighborOperator& A, int trials,
                                          std::uint64_t seed) {
  ReconstructionCheck out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  const auto& L = polar.spheres.levels;
  for (int t = 0; t < trials; ++t) {
    std::vector<Rational> phi(A.vertex_count());
    std::vector<std::vector<Rational>> blocks(polar.horizon + 1);
    for (int n = 0; n <= polar.horizon; ++n)
      for (VertexId v : L[n]) {
        phi[v] = Rational(num(rng), den(rng));
        blocks[n].push_back(phi[v]);
      }
    const auto direct = A.apply(phi);
    for (int n = 0; n < polar.horizon; ++n) {
      auto z = polar.D[n].apply(blocks[n]);
      const auto forward = polar.Ep[n].apply(blocks[n + 1]);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += forward[i];
      if (n > 0) {
        const auto back = polar.E[n - 1].apply(blocks[n - 1]);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += back[i];
      }
      for (std::size_t i = 0; i < z.size(); ++i) {
        ++out.rows_checked;
        if (z[i] != direct[L[n][i]]) ++out.mismatches;
      }
    }
    ++out.trials;
  }
  return out;
}

bool EStructureReport::structure_holds() const {
  return std::all_of(levels.begin(), levels.end(), [](const EStructureLevel& l) {
    return l.columns_nonzero && l.rows_one_or_two && l.pairs_succeeding;
  });
}

bool EStructureReport::all_injective() const {
  return std::all_of(levels.begin(), levels.end(),
                     [](const EStructureLevel& l) { return l.rank.full_column_rank(); });
}

EStructureReport check_E_structure(const PolarOperator& polar) {
  EStructureReport rep;
  for (int n = 0; n < polar.horizon; ++n) {
    const SparseBlock& E = polar.E[n];
    EStructureLevel lvl;
    lvl.n = n;
    lvl.rows = E.rows;
    lvl.cols = E.cols;
    std::vector<std::map<int, Rational>> rows(E.rows);
    for (const auto& [i, j, v] : E.entries) rows[i][j] += v;
    std::vector<char> column_hit(E.cols, 0);
    for (auto& row : rows) {
      std::vector<int> cols;
      for (const auto& [j, v] : row)
        if (v != 0) cols.push_back(j), column_hit[j] = 1;
      if (cols.size() < 1 || cols.size() > 2) lvl.rows_one_or_two = false;
      if (cols.size() == 2 && E.cols > 2) {
        const int a = cols[0], b = cols[1];
        if (!(b == a + 1 || (a == 0 && b == E.cols - 1))) lvl.pairs_succeeding = false;
      }
    }
    lvl.columns_nonzero = std::all_of(column_hit.begin(), column_hit.end(), [](char c) { return c != 0; });
    lvl.rank = certified_rank(E.dense());
    rep.levels.push_back(std::move(lvl));
  }
  return rep;
}

namespace {

using SparseRows = std::vector<std::vector<std::pair<int, Rational>>>;

// Smallest row space containing `seed` and closed under r -> r M. Its
// annihilator is the largest M-invariant subspace inside the kernel of seed.
template <class F>
EchelonBasis<F> invariant_closure(const SparseRows& seed, const SparseRows& M, int c) {
  using T = typename F::T;
  std::vector<std::vector<std::pair<int, T>>> m(M.size());
  for (std::size_t i = 0; i < M.size(); ++i)
    for (const auto& [j, v] : M[i]) m[i].emplace_back(j, F::from(v));
  EchelonBasis<F> basis(c);
  std::vector<std::vector<T>> queue;
  for (const auto& row : seed) {
    std::vector<T> r(c, F::zero());
    for (const auto& [j, v] : row) r[j] = F::add(r[j], F::from(v));
    queue.push_back(std::move(r));
  }
  while (!queue.empty() && basis.rank() < c) {
    std::vector<T> r = basis.reduce(std::move(queue.back()));
    queue.pop_back();
    if (std::all_of(r.begin(), r.end(), [](const T& x) { return F::is_zero(x); })) continue;
    std::vector<T> image(c, F::zero());
    for (int i = 0; i < c; ++i) {
      if (F::is_zero(r[i])) continue;
      for (const auto& [j, v] : m[i]) image[j] = F::add(image[j], F::mul(r[i], v));
    }
    basis.insert(std::move(r));
    queue.push_back(std::move(image));
  }
  return basis;
}

std::optional<Rational> rationalize(double x) {
  for (long den = 1; den <= 1000; ++den) {
    const double num = std::round(x * den);
    if (std::abs(num / den - x) < 1e-9) return Rational(static_cast<long>(num), den);
  }
  return std::nullopt;
}

}  // namespace

EigenfunctionSearch finitely_supported_eigenfunctions(const CombinatorialMap& map, const NearestNeighborOperator& A,
                                                      VertexId v0, int horizon) {
  if (v0 < 0 || v0 >= map.vertex_count()) throw InputError("unknown vertex " + std::to_string(v0));
  if (horizon < 2) throw InputError("horizon must be at least 2");
  if (!map.is_closed() && faithful_radius(map, {v0}) < horizon)
    throw PreconditionError("ball of radius " + std::to_string(horizon) + " is not faithful");
  EigenfunctionSearch out;
  out.horizon = horizon;
  const auto d = bfs_distances(map, {v0});
  std::vector<int> col(map.vertex_count(), -1);
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    if (d[v] < 0) continue;
    if (d[v] <= horizon - 2) {
      col[v] = static_cast<int>(out.domain.size());
      out.domain.push_back(v);
    }
    if (d[v] <= horizon - 1) ++out.constraint_rows;
  }
  const int c = static_cast<int>(out.domain.size());
  SparseRows M(c), T;
  for (VertexId v = 0; v < map.vertex_count(); ++v) {
    if (d[v] < 0 || d[v] > horizon - 1) continue;
    std::vector<std::pair<int, Rational>> row;
    if (col[v] >= 0) row.emplace_back(col[v], A.diagonal(v));
    for (HalfEdgeId h : map.rotation(v))
      if (col[map.head(h)] >= 0) row.emplace_back(col[map.head(h)], A.halfedge_coefficient(h));
    if (col[v] >= 0) M[col[v]] = std::move(row);
    else T.push_back(std::move(row));
  }

  try {
    const auto basis = invariant_closure<ModP>(T, M, c);
    if (basis.rank() == c) {
      out.method = "mod-p";
      return out;
    }
  } catch (const PreconditionError&) {
  }
  out.method = "exact";
  const auto basis = invariant_closure<RationalField>(T, M, c);
  const auto kernel = basis.kernel();
  out.invariant_dimension = static_cast<int>(kernel.size());
  if (kernel.empty()) return out;

  std::vector<int> free_cols;
  {
    std::vector<char> pivot(c, 0);
    for (int p : basis.pivots()) pivot[p] = 1;
    for (int j = 0; j < c; ++j)
      if (!pivot[j]) free_cols.push_back(j);
  }
  const int k = static_cast<int>(kernel.size());
  auto apply_m = [&](const std::vector<Rational>& x) {
    std::vector<Rational> y(c);
    for (int i = 0; i < c; ++i)
      for (const auto& [j, v] : M[i])
        if (x[j] != 0) y[i] += v * x[j];
    return y;
  };
  RationalMatrix R(k, k);
  for (int t = 0; t < k; ++t) {
    const auto y = apply_m(kernel[t]);
    for (int s = 0; s < k; ++s) R(s, t) = y[free_cols[s]];
  }
  Eigen::MatrixXd Rd(k, k);
  for (int s = 0; s < k; ++s)
    for (int t = 0; t < k; ++t) Rd(s, t) = to_double(R(s, t));
  Eigen::EigenSolver<Eigen::MatrixXd> es(Rd);
  std::vector<double> lambdas;
  for (int i = 0; i < k; ++i) {
    const auto ev = es.eigenvalues()[i];
    if (std::abs(ev.imag()) > 1e-8) {
      ++out.complex_skipped;
      continue;
    }
    lambdas.push_back(ev.real());
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end(), [](double a, double b) { return std::abs(a - b) < 1e-7; }),
                lambdas.end());
  auto lift = [&](const std::vector<Rational>& y) {
    std::vector<Rational> phi(c);
    for (int t = 0; t < k; ++t)
      if (y[t] != 0)
        for (int j = 0; j < c; ++j)
          if (kernel[t][j] != 0) phi[j] += y[t] * kernel[t][j];
    return phi;
  };
  for (double lambda : lambdas) {
    Eigenfunction ef;
    ef.lambda = lambda;
    if (auto q = rationalize(lambda)) {
      RationalMatrix shifted = R;
      for (int s = 0; s < k; ++s) shifted(s, s) -= *q;
      const auto ys = nullspace(shifted);
      if (!ys.empty()) {
        ef.exact_lambda = *q;
        for (const auto& y : ys) {
          auto phi = lift(y);
          std::vector<double> approx;
          for (const auto& x : phi) approx.push_back(to_double(x));
          ef.exact_basis.push_back(std::move(phi));
          ef.basis.push_back(std::move(approx));
        }
      }
    }
    if (!ef.exact_lambda) {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(Rd - lambda * Eigen::MatrixXd::Identity(k, k));
      lu.setThreshold(1e-8);
      const Eigen::MatrixXd ker = lu.kernel();
      for (int t = 0; t < ker.cols(); ++t) {
        std::vector<double> phi(c, 0.0);
        for (int s = 0; s < k; ++s)
          for (int j = 0; j < c; ++j) phi[j] += ker(s, t) * to_double(kernel[s][j]);
        ef.basis.push_back(std::move(phi));
      }
    }
    out.found.push_back(std::move(ef));
  }
  return out;
}

}  // namespace curvagraph
