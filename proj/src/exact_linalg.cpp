#include "curvagraph/exact_linalg.hpp"

#include "curvagraph/errors.hpp"

#include <algorithm>

namespace curvagraph {

ModP::T ModP::inv(T a) {
  if (a == 0) throw PreconditionError("inverse of zero mod p");
  T result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

ModP::T ModP::from(const Rational& r) {
  const BigInt P(p);
  BigInt num = boost::multiprecision::numerator(r) % P;
  if (num < 0) num += P;
  BigInt den = boost::multiprecision::denominator(r) % P;
  if (den == 0) throw PreconditionError("denominator divisible by p");
  return mul(num.convert_to<T>(), inv(den.convert_to<T>()));
}

std::vector<Rational> RationalMatrix::row(int i) const {
  return {data.begin() + static_cast<std::ptrdiff_t>(i) * cols, data.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols};
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != cols) throw InputError("dimension mismatch");
  std::vector<Rational> y(rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const Rational& a = (*this)(i, j);
      if (a != 0 && x[j] != 0) y[i] += a * x[j];
    }
  return y;
}

int rank_modp(const RationalMatrix& m) {
  EchelonBasis<ModP> basis(m.cols);
  for (int i = 0; i < m.rows && basis.rank() < m.cols; ++i) {
    std::vector<ModP::T> r(m.cols);
    for (int j = 0; j < m.cols; ++j) r[j] = ModP::from(m(i, j));
    basis.insert(std::move(r));
  }
  return basis.rank();
}

int rank_exact(const RationalMatrix& m) {
  EchelonBasis<RationalField> basis(m.cols);
  for (int i = 0; i < m.rows && basis.rank() < m.cols; ++i) basis.insert(m.row(i));
  return basis.rank();
}

RankCertificate certified_rank(const RationalMatrix& m) {
  RankCertificate c;
  c.columns = m.cols;
  try {
    c.rank = rank_modp(m);
    c.method = "mod-p";
    if (c.rank == std::min(m.rows, m.cols)) return c;
  } catch (const PreconditionError&) {
  }
  c.rank = rank_exact(m);
  c.method = "exact";
  return c;
}

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  EchelonBasis<RationalField> basis(m.cols);
  for (int i = 0; i < m.rows; ++i) basis.insert(m.row(i));
  return basis.kernel();
}

}  // namespace curvagraph
