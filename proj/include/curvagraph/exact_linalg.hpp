#pragma once

#include "curvagraph/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace curvagraph {

// Arithmetic in Z/pZ for the Mersenne prime 2^61 - 1.
struct ModP {
  using T = std::uint64_t;
  static constexpr T p = (T{1} << 61) - 1;

  static T zero() { return 0; }
  static T one() { return 1; }
  static bool is_zero(T a) { return a == 0; }
  static T add(T a, T b) { T s = a + b; return s >= p ? s - p : s; }
  static T sub(T a, T b) { return a >= b ? a - b : a + p - b; }
  static T mul(T a, T b) {
    const unsigned __int128 m = static_cast<unsigned __int128>(a) * b;
    T lo = static_cast<T>(m & p), hi = static_cast<T>(m >> 61);
    T s = lo + hi;
    return s >= p ? s - p : s;
  }
  static T inv(T a);
  // Throws PreconditionError when p divides the denominator.
  static T from(const Rational& r);
};

struct RationalField {
  using T = Rational;

  static T zero() { return 0; }
  static T one() { return 1; }
  static bool is_zero(const T& a) { return a == 0; }
  static T add(const T& a, const T& b) { return a + b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T inv(const T& a) { return 1 / a; }
  static T from(const Rational& r) { return r; }
};

// Row space kept in reduced row echelon form; rows are inserted one at a time.
template <class F>
class EchelonBasis {
public:
  using T = typename F::T;

  explicit EchelonBasis(int columns) : n_(columns) {}

  int columns() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<T>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  // Reduces r against the basis; returns the remainder.
  std::vector<T> reduce(std::vector<T> r) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const T c = r[pivots_[i]];
      if (F::is_zero(c)) continue;
      for (int j = 0; j < n_; ++j)
        if (!F::is_zero(rows_[i][j])) r[j] = F::sub(r[j], F::mul(c, rows_[i][j]));
    }
    return r;
  }

  // Adds r to the span; true when the rank grew.
  bool insert(std::vector<T> r) {
    r = reduce(std::move(r));
    int pivot = -1;
    for (int j = 0; j < n_ && pivot < 0; ++j)
      if (!F::is_zero(r[j])) pivot = j;
    if (pivot < 0) return false;
    const T s = F::inv(r[pivot]);
    for (int j = 0; j < n_; ++j)
      if (!F::is_zero(r[j])) r[j] = F::mul(r[j], s);
    for (auto& row : rows_) {
      const T c = row[pivot];
      if (F::is_zero(c)) continue;
      for (int j = 0; j < n_; ++j)
        if (!F::is_zero(r[j])) row[j] = F::sub(row[j], F::mul(c, r[j]));
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(pivot);
    return true;
  }

  // Basis of {x : row . x = 0 for every row}.
  std::vector<std::vector<T>> kernel() const {
    std::vector<char> is_pivot(n_, 0);
    for (int c : pivots_) is_pivot[c] = 1;
    std::vector<std::vector<T>> out;
    for (int f = 0; f < n_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<T> x(n_, F::zero());
      x[f] = F::one();
      for (std::size_t i = 0; i < rows_.size(); ++i) x[pivots_[i]] = F::sub(F::zero(), rows_[i][f]);
      out.push_back(std::move(x));
    }
    return out;
  }

private:
  int n_;
  std::vector<std::vector<T>> rows_;
  std::vector<int> pivots_;
};

// Dense rational matrix, row major.
struct RationalMatrix {
  int rows = 0, cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  Rational& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const Rational& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
  std::vector<Rational> row(int i) const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;
};

int rank_modp(const RationalMatrix& m);
int rank_exact(const RationalMatrix& m);

struct RankCertificate {
  int rank = 0;
  int columns = 0;
  std::string method;  // "mod-p" when the mod-p rank is already full, otherwise "exact"

  bool full_column_rank() const { return rank == columns; }
};
// The rank mod p never exceeds the rank over Q, so a full mod-p rank is a
// certificate; otherwise (or when p divides a denominator) eliminate over Q.
RankCertificate certified_rank(const RationalMatrix& m);

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);

}  // namespace curvagraph
