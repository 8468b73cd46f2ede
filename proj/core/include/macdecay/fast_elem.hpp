#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>

#include "macdecay/error.hpp"
#include "macdecay/quad.hpp"
#include "macdecay/tower.hpp"

namespace macdecay {

inline constexpr int kMaxFastDegree = 8;

namespace checked {

inline std::int64_t add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw ArithmeticOverflow();
  return r;
}
inline std::int64_t sub(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r)) throw ArithmeticOverflow();
  return r;
}
inline std::int64_t mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw ArithmeticOverflow();
  return r;
}

}  // namespace checked

/// Integral reduction and Galois data of a tower in int64 form.
///
/// Available when the degree is at most kMaxFastDegree and f and every
/// D sigma^j matrix have O_K-integral entries fitting in int64, where D is
/// the common denominator of the sigma^j matrices (1 unless O_K[theta] is not
/// sigma-stable, as for the quartic period field of conductor 17).
class FastRing {
 public:
  static std::unique_ptr<FastRing> build(const Tower& tower);

  int degree() const { return d_; }
  RingTag tag() const { return tag_; }
  double theta() const { return theta_; }

  QuadInt mul(QuadInt x, QuadInt y) const {
    const std::int64_t ac = checked::mul(x.a, y.a);
    const std::int64_t bd = checked::mul(x.b, y.b);
    const std::int64_t cross = checked::add(checked::mul(x.a, y.b), checked::mul(x.b, y.a));
    if (tag_ == RingTag::Eisenstein) return {checked::sub(ac, bd), checked::add(cross, bd)};
    return {checked::sub(ac, bd), cross};
  }

  /// theta^(d+e) in the power basis.
  const std::array<QuadInt, kMaxFastDegree>& reduction(int e) const { return reduce_[static_cast<std::size_t>(e)]; }
  std::int64_t sigma_den() const { return den_; }
  /// Entry (row k, column i) of D sigma^j.
  QuadInt sigma(int j, int k, int i) const { return sigma_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]; }

 private:
  int d_ = 0;
  RingTag tag_ = RingTag::Gaussian;
  double theta_ = 0;
  std::int64_t den_ = 1;
  std::array<std::array<QuadInt, kMaxFastDegree>, kMaxFastDegree> reduce_{};
  std::array<std::array<std::array<QuadInt, kMaxFastDegree>, kMaxFastDegree>, kMaxFastDegree> sigma_{};
};

class FieldElem;

/// Integral element of O_K[theta] with int64 coordinates.
///
/// Every operation is overflow-checked and throws ArithmeticOverflow rather
/// than wrapping; callers redo the computation with FieldElem on overflow.
class IntElem {
 public:
  IntElem() = default;
  explicit IntElem(const FastRing* ring) : ring_(ring) {}

  /// coeffs[2a + b] multiplies theta^a mu^b.
  static IntElem from_basis_coeffs(const FastRing* ring, std::span<const std::int64_t> coeffs);
  static IntElem from_quad(const FastRing* ring, QuadInt c);
  /// Throws PreconditionError for non-integral x, ArithmeticOverflow if too large.
  static IntElem from_field(const FastRing* ring, const FieldElem& x);
  FieldElem to_field(const TowerPtr& tower) const;

  const FastRing* ring() const { return ring_; }
  QuadInt operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  QuadInt& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  bool is_zero() const {
    for (int i = 0; i < ring_->degree(); ++i)
      if (c_[static_cast<std::size_t>(i)].a != 0 || c_[static_cast<std::size_t>(i)].b != 0) return false;
    return true;
  }

  IntElem& operator+=(const IntElem& o) {
    for (int i = 0; i < ring_->degree(); ++i) {
      auto& x = c_[static_cast<std::size_t>(i)];
      const auto& y = o.c_[static_cast<std::size_t>(i)];
      x = {checked::add(x.a, y.a), checked::add(x.b, y.b)};
    }
    return *this;
  }
  IntElem& operator-=(const IntElem& o) {
    for (int i = 0; i < ring_->degree(); ++i) {
      auto& x = c_[static_cast<std::size_t>(i)];
      const auto& y = o.c_[static_cast<std::size_t>(i)];
      x = {checked::sub(x.a, y.a), checked::sub(x.b, y.b)};
    }
    return *this;
  }
  IntElem operator-() const {
    IntElem r(ring_);
    r -= *this;
    return r;
  }
  friend IntElem operator+(IntElem x, const IntElem& y) { return x += y; }
  friend IntElem operator-(IntElem x, const IntElem& y) { return x -= y; }
  friend IntElem operator*(const IntElem& x, const IntElem& y);
  IntElem scaled(QuadInt s) const;
  friend bool operator==(const IntElem& x, const IntElem& y) {
    for (int i = 0; i < x.ring_->degree(); ++i)
      if (!(x.c_[static_cast<std::size_t>(i)] == y.c_[static_cast<std::size_t>(i)])) return false;
    return true;
  }

  /// D sigma^j(x), D = ring()->sigma_den(); also scaled for j = 0.
  IntElem sigma_scaled(int j) const;
  /// sigma^j(x); throws ArithmeticOverflow when it leaves O_K[theta].
  IntElem sigma(int j) const;
  IntElem conj() const;

 private:
  const FastRing* ring_ = nullptr;
  std::array<QuadInt, kMaxFastDegree> c_{};
};

}  // namespace macdecay
