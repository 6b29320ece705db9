#pragma once

#include <cmath>

namespace sixth {

/// A real number stored as mantissa * e^exponent.
///
/// Used to evaluate expressions containing cosh(a), sinh(a) with a up to a
/// few thousand, where the plain double would overflow. Sums align both
/// operands to the larger exponent, so a term like cos(2x) next to cosh(2a)
/// simply underflows to zero instead of the cosh overflowing.
class ExpScaled {
 public:
  constexpr ExpScaled() = default;
  constexpr ExpScaled(double value) : mantissa_(value) {}  // NOLINT(implicit)
  constexpr ExpScaled(double mantissa, double exponent)
      : mantissa_(mantissa), exponent_(exponent) {}

  /// e^a
  static ExpScaled exp(double a) { return {1.0, a}; }
  /// cosh(a) for any real a.
  static ExpScaled cosh(double a) {
    const double b = std::fabs(a);
    return {0.5 * (1.0 + std::exp(-2.0 * b)), b};
  }
  /// sinh(a) for any real a.
  static ExpScaled sinh(double a) {
    const double b = std::fabs(a);
    const double m = -0.5 * std::expm1(-2.0 * b);
    return {a < 0 ? -m : m, b};
  }

  double mantissa() const noexcept { return mantissa_; }
  double exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0.0; }

  /// Plain double value; overflows to +-inf only if the value itself does.
  double value() const { return mantissa_ == 0.0 ? 0.0 : mantissa_ * std::exp(exponent_); }
  /// The value multiplied by e^-shift, evaluated without forming the value.
  double value_scaled(double shift) const {
    return mantissa_ == 0.0 ? 0.0 : mantissa_ * std::exp(exponent_ - shift);
  }
  /// Natural log of |value|; -inf for zero.
  double log_abs() const {
    return mantissa_ == 0.0 ? -INFINITY : std::log(std::fabs(mantissa_)) + exponent_;
  }

  ExpScaled operator-() const { return {-mantissa_, exponent_}; }

  friend ExpScaled operator*(const ExpScaled& a, const ExpScaled& b) {
    return normalized(a.mantissa_ * b.mantissa_, a.exponent_ + b.exponent_);
  }
  friend ExpScaled operator/(const ExpScaled& a, const ExpScaled& b) {
    return normalized(a.mantissa_ / b.mantissa_, a.exponent_ - b.exponent_);
  }
  friend ExpScaled operator+(const ExpScaled& a, const ExpScaled& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double e = a.exponent_ > b.exponent_ ? a.exponent_ : b.exponent_;
    return normalized(a.mantissa_ * std::exp(a.exponent_ - e) +
                          b.mantissa_ * std::exp(b.exponent_ - e),
                      e);
  }
  friend ExpScaled operator-(const ExpScaled& a, const ExpScaled& b) { return a + (-b); }

  ExpScaled& operator+=(const ExpScaled& o) { return *this = *this + o; }
  ExpScaled& operator-=(const ExpScaled& o) { return *this = *this - o; }
  ExpScaled& operator*=(const ExpScaled& o) { return *this = *this * o; }
  ExpScaled& operator/=(const ExpScaled& o) { return *this = *this / o; }

  friend ExpScaled sqrt(const ExpScaled& a) {
    return {std::sqrt(a.mantissa_), 0.5 * a.exponent_};
  }

 private:
  static ExpScaled normalized(double m, double e) {
    const double am = std::fabs(m);
    if (m == 0.0) return {0.0, 0.0};
    if (am > 1e150 || am < 1e-150) {
      return {std::copysign(1.0, m), e + std::log(am)};
    }
    return {m, e};
  }

  double mantissa_ = 0.0;
  double exponent_ = 0.0;
};

}  // namespace sixth
