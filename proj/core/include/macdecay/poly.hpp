#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "macdecay/error.hpp"
#include "macdecay/quad.hpp"

namespace macdecay {

namespace detail {
inline bool coeff_is_zero(const QuadElem& c) { return c.is_zero(); }
inline bool coeff_is_zero(const BigRat& c) { return sgn(c) == 0; }
inline bool coeff_is_zero(const BigInt& c) { return sgn(c) == 0; }
inline QuadElem coeff_inverse(const QuadElem& c) { return c.inverse(); }
inline BigRat coeff_inverse(const BigRat& c) {
  if (sgn(c) == 0) throw DivisionByZero();
  return BigRat(1) / c;
}
}  // namespace detail

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// Trailing zeros are always trimmed, so the zero polynomial has an empty
/// coefficient list and degree() == -1.
template <class C>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<C> coeffs) : c_(coeffs) { trim(); }

  static Poly monomial(const C& coeff, int deg) {
    std::vector<C> c(static_cast<std::size_t>(deg) + 1, C(0));
    c.back() = coeff;
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<C>& coeffs() const { return c_; }
  /// Coefficient of x^i; zero beyond the degree.
  C operator[](int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : C(0); }
  const C& leading() const { return c_.back(); }

  template <class X>
  X eval(const X& x) const {
    X acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<C> d(c_.size() - 1, C(0));
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * C(static_cast<long>(i));
    return Poly(std::move(d));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Poly operator+(const Poly& x, const Poly& y) {
    std::vector<C> r(std::max(x.c_.size(), y.c_.size()), C(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i) r[i] = x.c_[i];
    for (std::size_t i = 0; i < y.c_.size(); ++i) r[i] = r[i] + y.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return {};
    std::vector<C> r(x.c_.size() + y.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i)
      for (std::size_t j = 0; j < y.c_.size(); ++j) r[i + j] = r[i + j] + x.c_[i] * y.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const C& s, const Poly& y) { return Poly({s}) * y; }
  friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }

  /// Euclidean division over a field of coefficients: *this = q * d + r.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw DivisionByZero();
    std::vector<C> r = c_;
    const int dd = d.degree();
    if (degree() < dd) return {Poly{}, *this};
    std::vector<C> q(static_cast<std::size_t>(degree() - dd) + 1, C(0));
    const C inv = detail::coeff_inverse(d.leading());
    for (int i = degree(); i >= dd; --i) {
      const C& top = r[static_cast<std::size_t>(i)];
      if (detail::coeff_is_zero(top)) continue;
      C f = top * inv;
      for (int j = 0; j <= dd; ++j) {
        auto& slot = r[static_cast<std::size_t>(i - dd + j)];
        slot = slot - f * d.c_[static_cast<std::size_t>(j)];
      }
      q[static_cast<std::size_t>(i - dd)] = f;
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<C> c_;
};

/// Resultant of two nonzero polynomials over a field, via the Sylvester matrix.
template <class C>
C resultant(const Poly<C>& f, const Poly<C>& g) {
  const int m = f.degree();
  const int n = g.degree();
  if (m < 0 || n < 0) return C(0);
  const int size = m + n;
  if (size == 0) return C(1);
  std::vector<std::vector<C>> s(static_cast<std::size_t>(size), std::vector<C>(static_cast<std::size_t>(size), C(0)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
  // Gaussian elimination with exact arithmetic.
  C det(1);
  for (int col = 0; col < size; ++col) {
    int piv = -1;
    for (int r = col; r < size; ++r)
      if (!detail::coeff_is_zero(s[r][col])) {
        piv = r;
        break;
      }
    if (piv < 0) return C(0);
    if (piv != col) {
      std::swap(s[piv], s[col]);
      det = -det;
    }
    det = det * s[col][col];
    const C inv = detail::coeff_inverse(s[col][col]);
    for (int r = col + 1; r < size; ++r) {
      if (detail::coeff_is_zero(s[r][col])) continue;
      const C f = s[r][col] * inv;
      for (int c = col; c < size; ++c) s[r][c] = s[r][c] - f * s[col][c];
    }
  }
  return det;
}

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
template <class C>
C discriminant(const Poly<C>& f) {
  const int n = f.degree();
  if (n < 2) throw PreconditionError("discriminant needs degree >= 2");
  C r = resultant(f, f.derivative()) * detail::coeff_inverse(f.leading());
  if ((n * (n - 1) / 2) % 2 != 0) r = -r;
  return r;
}

}  // namespace macdecay
