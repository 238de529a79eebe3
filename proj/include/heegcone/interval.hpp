#pragma once

#include "heegcone/numeric.hpp"

#include <string>

namespace heegcone {

/// Working precision for outward rounding: endpoints are multiples of 2^-bits.
inline constexpr int default_interval_bits = 192;

/// Closed interval with dyadic rational endpoints. Arithmetic rounds outward,
/// so the true value of any computed expression stays enclosed.
class Interval {
 public:
  Interval() = default;
  explicit Interval(const Rational& x) : lo_(x), hi_(x) {}
  Interval(const Rational& lo, const Rational& hi);

  const Rational& lower() const { return lo_; }
  const Rational& upper() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool positive() const { return lo_ > 0; }
  bool negative() const { return hi_ < 0; }
  bool sign_determined() const { return positive() || negative() || (lo_ == 0 && hi_ == 0); }

  /// Outward rounding of both endpoints to multiples of 2^-bits.
  Interval rounded(int bits = default_interval_bits) const;

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  double approx() const { return midpoint().get_d(); }
  /// "[lo,hi]" with exact dyadic endpoints.
  std::string str() const;

 private:
  Rational lo_{0};
  Rational hi_{0};
};

Interval operator+(Interval a, const Interval& b);
Interval operator-(Interval a, const Interval& b);
Interval operator*(Interval a, const Interval& b);
Interval operator/(Interval a, const Interval& b);
Interval operator-(const Interval& a);

Rational round_down(const Rational& x, int bits);
Rational round_up(const Rational& x, int bits);

Interval pow(const Interval& x, unsigned n);
/// Enclosure of the non-negative real root x^(1/q) for rational x >= 0.
Interval root(const Rational& x, unsigned q, int bits = default_interval_bits);
Interval sqrt(const Rational& x, int bits = default_interval_bits);
Interval sqrt(const Interval& x, int bits = default_interval_bits);
/// Enclosure of x^e for rational x > 0 and rational exponent e.
Interval rational_power(const Rational& x, const Rational& e, int bits = default_interval_bits);
/// Enclosure of pi (Machin's formula with alternating-series bracketing).
Interval pi_interval(int bits = default_interval_bits);
/// Interval hull.
Interval hull(const Interval& a, const Interval& b);

}  // namespace heegcone
