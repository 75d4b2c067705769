#include "curvagraph/rational.hpp"

#include "curvagraph/errors.hpp"

namespace curvagraph {

std::string to_string(const Rational& r) { return r.str(); }

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    // GMP accepts a zero denominator without complaint
    if (slash != std::string::npos && BigInt(text.substr(slash + 1)) == 0) throw InputError("zero denominator");
    return Rational(text);
  } catch (const std::exception&) {
    throw InputError("not a rational number: '" + text + "'");
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace curvagraph
