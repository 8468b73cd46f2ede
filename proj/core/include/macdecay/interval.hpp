#pragma once

#include <string>

#include "macdecay/quad.hpp"

namespace macdecay {

/// Closed interval [lo, hi] with exact rational endpoints.
///
/// All operations are exact, so enclosures are rigorous; round_outward()
/// keeps endpoint sizes bounded by snapping to a dyadic grid.
struct RatInterval {
  BigRat lo{0};
  BigRat hi{0};

  static RatInterval point(const BigRat& v) { return {v, v}; }

  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  /// +1 / -1 when the interval excludes zero, 0 otherwise.
  int sign() const { return sgn(lo) > 0 ? 1 : (sgn(hi) < 0 ? -1 : 0); }
  BigRat width() const { return hi - lo; }
  BigRat mid() const { return (lo + hi) / 2; }

  RatInterval round_outward(int bits) const;

  friend RatInterval operator+(const RatInterval& x, const RatInterval& y) { return {x.lo + y.lo, x.hi + y.hi}; }
  friend RatInterval operator-(const RatInterval& x, const RatInterval& y) { return {x.lo - y.hi, x.hi - y.lo}; }
  friend RatInterval operator*(const RatInterval& x, const RatInterval& y);
  friend RatInterval operator*(const BigRat& s, const RatInterval& x);
};

/// Enclosure of a complex number as a box re x im.
struct ComplexEnclosure {
  RatInterval re;
  RatInterval im;

  /// Enclosure of |z|^2.
  RatInterval abs2() const;
  /// Half the larger side of the box, as a double rounded up.
  double radius() const;
};

/// Decimal rendering of a nonnegative real known to lie in an interval.
struct RealBall {
  std::string mid;   // scientific notation, `digits` significant digits
  double value = 0;  // nearest double to the midpoint
  double radius = 0; // rounded up
};

/// Enclosure of sqrt(x) for an interval x with lo >= 0, via MPFR directed rounding.
RealBall sqrt_ball(const RatInterval& x, int bits, int digits = 20);
/// Plain midpoint rendering of an interval.
RealBall to_ball(const RatInterval& x, int bits, int digits = 20);

double to_double_down(const BigRat& x);
double to_double_up(const BigRat& x);

}  // namespace macdecay
