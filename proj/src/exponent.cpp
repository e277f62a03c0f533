#include "hbesov/exponent.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "hbesov/errors.hpp"

namespace hbesov {

Exponent Exponent::finite(double value) {
  if (!(value >= 1.0) || std::isinf(value))
    throw ParameterError("exponent must lie in [1, inf), got " + std::to_string(value));
  return Exponent(value);
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "∞") return infinity();
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ParameterError("cannot parse exponent '" + s + "'");
  return finite(v);
}

Exponent Exponent::conjugate() const {
  if (is_infinite()) return finite(1.0);
  if (value_ == 1.0) return infinity();
  return finite(value_ / (value_ - 1.0));
}

std::string Exponent::str() const {
  if (is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

bool holder_compatible(Exponent p, Exponent p1, Exponent p2) {
  return std::fabs(p.reciprocal() - (p1.reciprocal() + p2.reciprocal())) <= 1e-12;
}

}  // namespace hbesov
