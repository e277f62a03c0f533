#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace hbesov {

/// An integrability/summability exponent in [1, ∞]. Infinity is a distinct
/// state rather than a large number, because every norm branches on it.
class Exponent {
 public:
  constexpr Exponent() = default;
  /// Throws ParameterError unless 1 <= value < inf.
  static Exponent finite(double value);
  static constexpr Exponent infinity() { return Exponent(kInf); }
  /// Accepts "inf", "infinity", "∞" or a number >= 1.
  static Exponent parse(std::string_view text);

  constexpr bool is_infinite() const { return value_ == kInf; }
  /// Finite value; infinity reports +inf.
  constexpr double value() const { return value_; }
  /// 1/p with 1/∞ = 0.
  constexpr double reciprocal() const { return is_infinite() ? 0.0 : 1.0 / value_; }
  /// Conjugate exponent p' with 1/p + 1/p' = 1.
  Exponent conjugate() const;
  std::string str() const;

  friend constexpr bool operator==(Exponent a, Exponent b) { return a.value_ == b.value_; }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr explicit Exponent(double v) : value_(v) {}
  double value_ = 2.0;
};

/// True when 1/p = 1/p1 + 1/p2 up to rounding.
bool holder_compatible(Exponent p, Exponent p1, Exponent p2);

}  // namespace hbesov
