#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace macdecay {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Which imaginary quadratic field K we are working over.
///
/// Elements are written a + b*mu where mu = i (Gaussian) or
/// mu = omega = (1 + sqrt(-3))/2 (Eisenstein, omega^2 = omega - 1).
/// Rational elements have b == 0 and combine with either field.
enum class RingTag { Rational, Gaussian, Eisenstein };

const char* field_name(RingTag tag);  // "Q", "Q(i)", "Q(sqrt-3)"
RingTag parse_field_name(const std::string& name);

/// Element a + b*mu of K with exact rational coordinates.
class QuadElem {
 public:
  QuadElem() = default;
  QuadElem(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadElem(BigRat a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  QuadElem(BigRat a, BigRat b, RingTag tag);

  static QuadElem mu(RingTag tag) { return {0, 1, tag}; }

  const BigRat& a() const { return a_; }
  const BigRat& b() const { return b_; }
  RingTag tag() const { return tag_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_integral() const;
  /// N(a + b mu); nonnegative and zero only for zero.
  BigRat norm() const;
  QuadElem conj() const;
  QuadElem inverse() const;

  QuadElem operator-() const;
  QuadElem& operator+=(const QuadElem& o);
  QuadElem& operator-=(const QuadElem& o);
  QuadElem& operator*=(const QuadElem& o);

  friend QuadElem operator+(QuadElem x, const QuadElem& y) { return x += y; }
  friend QuadElem operator-(QuadElem x, const QuadElem& y) { return x -= y; }
  friend QuadElem operator*(QuadElem x, const QuadElem& y) { return x *= y; }
  friend QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * y.inverse(); }
  friend bool operator==(const QuadElem& x, const QuadElem& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  /// "2+i", "1+2w", "-3/2", ... (w stands for omega).
  std::string to_string() const;

 private:
  static RingTag join(RingTag x, RingTag y);

  BigRat a_{0};
  BigRat b_{0};
  RingTag tag_ = RingTag::Rational;
};

std::ostream& operator<<(std::ostream& os, const QuadElem& x);

/// Exact quotient in O_K; nullopt when y does not divide x in O_K.
std::optional<QuadElem> try_div_exact(const QuadElem& x, const QuadElem& y);
/// Exact quotient in O_K; throws NotDivisible / DivisionByZero.
QuadElem div_exact(const QuadElem& x, const QuadElem& y);

inline constexpr int kInfiniteValuation = INT_MAX;

/// Largest e with p^e | x in O_K, or kInfiniteValuation for x == 0.
int ok_valuation(const QuadElem& x, const QuadElem& p);

/// Units of O_K (4 for Z[i], 6 for Z[omega], 2 for Z).
std::vector<QuadElem> units(RingTag tag);

/// Representative with a > 0, b >= 0 among the unit multiples of x.
/// For Z[i] this is the first quadrant, for Z[omega] the sector [0, 60 deg).
QuadElem canonical_associate(const QuadElem& x);

/// Small machine-integer element of O_K, used by the fast arithmetic path.
struct QuadInt {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

}  // namespace macdecay
