#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <optional>
#include <string>

namespace curvagraph {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline Rational make_rational(long long num, long long den = 1) { return Rational(num, den); }

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);
double to_double(const Rational& r);

// Rational extended by +infinity; used for Cheeger-type bounds where 2q/(q-2)
// or a ratio may be unbounded.
class ExtRational {
public:
  ExtRational() = default;
  ExtRational(Rational value) : value_(std::move(value)) {}
  static ExtRational infinity() {
    ExtRational e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  const Rational& value() const { return value_; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }

  std::string str() const { return infinite_ ? "inf" : to_string(value_); }

private:
  Rational value_{0};
  bool infinite_ = false;
};

}  // namespace curvagraph
