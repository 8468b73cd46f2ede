#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "macdecay/interval.hpp"
#include "macdecay/tower.hpp"

namespace macdecay {

/// Element of L in the power basis 1, theta, ..., theta^(d-1) over K.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(TowerPtr tower, std::vector<QuadElem> coords);

  static FieldElem zero(const TowerPtr& t);
  static FieldElem one(const TowerPtr& t);
  static FieldElem theta(const TowerPtr& t);
  static FieldElem scalar(const TowerPtr& t, const QuadElem& c);
  /// Integer combination of the Z-basis {theta^a mu^b}, ordered a-major:
  /// coeffs[2a + b] multiplies theta^a mu^b.
  static FieldElem from_basis_coeffs(const TowerPtr& t, std::span<const long> coeffs);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<QuadElem>& coords() const { return c_; }
  const QuadElem& coord(int i) const { return c_[static_cast<std::size_t>(i)]; }

  bool is_zero() const;
  bool is_integral() const;
  bool in_base_field() const;  // all coordinates above the constant vanish

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator*=(const QuadElem& s);

  friend FieldElem operator+(FieldElem x, const FieldElem& y) { return x += y; }
  friend FieldElem operator-(FieldElem x, const FieldElem& y) { return x -= y; }
  friend FieldElem operator*(FieldElem x, const FieldElem& y) { return x *= y; }
  friend FieldElem operator*(const QuadElem& s, FieldElem x) { return x *= s; }
  friend bool operator==(const FieldElem& x, const FieldElem& y) { return x.c_ == y.c_; }

  /// Multiplicative inverse via the extended Euclidean algorithm in K[x].
  FieldElem inverse() const;

  std::string to_string() const;

 private:
  void check_same(const FieldElem& o) const;

  TowerPtr tower_;
  std::vector<QuadElem> c_;
};

enum class NormLevel { LOverF, LOverK };

/// sigma^j(x), j taken modulo the degree.
FieldElem apply_sigma(const FieldElem& x, int j);
/// tau = sigma^U, generator of Gal(L/F).
FieldElem apply_tau(const FieldElem& x, int times = 1);
FieldElem rel_norm(const FieldElem& x, NormLevel level);

/// v_P(x) for P = pO_L, p inert; kInfiniteValuation for x == 0.
/// Requires v_p(disc f) = 0, so O_K[theta] is maximal at p; rational
/// denominators are cleared first.
int valuation(const FieldElem& x, const QuadElem& p);

/// Complex conjugation: fixes theta, conjugates K.
FieldElem conj_complex(const FieldElem& x);

/// Rigorous enclosure of the designated complex embedding of x.
ComplexEnclosure embed_numeric(const FieldElem& x, int bits);
/// Double-precision approximation of the same embedding.
std::complex<double> embed_double(const FieldElem& x);

/// Sign of a real element sum c_a theta^a (integer or rational c_a) under
/// the designated embedding; exact zero test first, then interval
/// refinement with doubling precision.
int real_sign(const Tower& tower, std::span<const BigRat> coeffs, int start_bits = 64);

}  // namespace macdecay
