#pragma once

#include <cstdint>
#include <vector>

#include "macdecay/poly.hpp"
#include "macdecay/quad.hpp"

namespace macdecay {

/// Element of F_q stored as c0 + c1*t; c1 is always 0 when q is prime.
struct FqElem {
  std::uint64_t c0 = 0;
  std::uint64_t c1 = 0;
  friend bool operator==(const FqElem&, const FqElem&) = default;
};

/// Residue field O_K / p for a prime p of O_K.
///
/// When N(p) = l is prime the field is F_l and mu maps to a root of its
/// minimal polynomial that kills p. When p is (an associate of) a rational
/// prime l inert in K, the field is F_l[t]/(minpoly of mu), of order l^2.
class FqField {
 public:
  explicit FqField(const QuadElem& p);

  std::uint64_t characteristic() const { return ell_; }
  int degree() const { return degree_; }
  std::uint64_t order() const { return degree_ == 1 ? ell_ : ell_ * ell_; }

  FqElem reduce(const QuadElem& x) const;  // x must be integral
  FqElem from_int(std::int64_t v) const;

  FqElem add(FqElem x, FqElem y) const;
  FqElem sub(FqElem x, FqElem y) const;
  FqElem neg(FqElem x) const;
  FqElem mul(FqElem x, FqElem y) const;
  FqElem inv(FqElem x) const;
  FqElem pow(FqElem x, std::uint64_t e) const;
  bool is_zero(FqElem x) const { return x.c0 == 0 && x.c1 == 0; }

  /// Element with index i in [0, q), enumerating the whole field.
  FqElem element(std::uint64_t i) const { return {i % ell_, degree_ == 1 ? 0 : i / ell_}; }

 private:
  std::uint64_t mod(std::int64_t v) const;

  std::uint64_t ell_ = 2;
  int degree_ = 1;
  std::uint64_t mu_root_ = 0;  // degree 1: image of mu
  // degree 2: t^2 = s*t + r
  std::uint64_t s_ = 0;
  std::uint64_t r_ = 0;
};

/// Polynomials over a fixed F_q, ascending coefficients, trimmed.
using FqPoly = std::vector<FqElem>;

class FqPolyRing {
 public:
  explicit FqPolyRing(const FqField& field) : k_(field) {}
  const FqField& field() const { return k_; }

  FqPoly trim(FqPoly a) const;
  FqPoly sub(const FqPoly& a, const FqPoly& b) const;
  FqPoly mul(const FqPoly& a, const FqPoly& b) const;
  FqPoly mod(const FqPoly& a, const FqPoly& m) const;
  FqPoly gcd(FqPoly a, FqPoly b) const;
  FqPoly powmod(const FqPoly& base, std::uint64_t e, const FqPoly& m) const;
  FqElem eval(const FqPoly& a, FqElem x) const;

 private:
  const FqField& k_;
};

/// Irreducibility of a polynomial over F_q.
///
/// Degree <= 3 with small q uses an exhaustive root search; otherwise the
/// Rabin test: x^(q^n) = x mod f and gcd(x^(q^(n/r)) - x, f) = 1 for each
/// prime r dividing n.
bool is_irreducible(const FqPolyRing& ring, const FqPoly& f);

/// Reduce an O_K-integral polynomial modulo p.
FqPoly reduce_poly(const FqField& field, const Poly<QuadElem>& f);

}  // namespace macdecay
