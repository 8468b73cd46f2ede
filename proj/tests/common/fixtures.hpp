#pragma once

#include <random>
#include <vector>

#include "macdecay/catalog.hpp"
#include "macdecay/code.hpp"
#include "macdecay/field_elem.hpp"

namespace macdecay::testing {

inline TowerPtr period_tower(int m, RingTag field, int users, int antennas) {
  return make_period_tower(PeriodSpec::for_degree(m, users * antennas), field, users, antennas);
}

inline QuadElem gi(long a, long b) { return {BigRat(a), BigRat(b), RingTag::Gaussian}; }
inline QuadElem ew(long a, long b) { return {BigRat(a), BigRat(b), RingTag::Eisenstein}; }

// C_{2,1}(Q(i, sqrt5), 1+i, sigma, 1)
inline const CodeSpec& c21() {
  static const CodeSpec s = CodeSpec::create(period_tower(5, RingTag::Gaussian, 2, 1), gi(1, 1), 1);
  return s;
}
// C_{3,1}(Q(i, zeta_7 + zeta_7^-1), 2+i, sigma, 1)
inline const CodeSpec& c31() {
  static const CodeSpec s = CodeSpec::create(period_tower(7, RingTag::Gaussian, 3, 1), gi(2, 1), 1);
  return s;
}
// C_{2,2} over Q(sqrt-3) and the quartic period field of conductor 17, p = sqrt-3 (as 1+w), k = 2
inline const CodeSpec& c22() {
  static const CodeSpec s = CodeSpec::create(period_tower(17, RingTag::Eisenstein, 2, 2), ew(1, 1), 2);
  return s;
}
// single user, three antennas
inline const CodeSpec& c13() {
  static const CodeSpec s = CodeSpec::create(period_tower(7, RingTag::Gaussian, 1, 3), gi(2, 1), 2);
  return s;
}

inline std::vector<long> random_coeffs(std::mt19937_64& rng, int len, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<long> v(static_cast<std::size_t>(len));
  for (auto& x : v) x = d(rng);
  return v;
}

inline FieldElem random_integral(const TowerPtr& t, std::mt19937_64& rng, long bound) {
  const auto c = random_coeffs(rng, 2 * t->degree(), bound);
  return FieldElem::from_basis_coeffs(t, c);
}

inline FieldElem random_nonzero(const TowerPtr& t, std::mt19937_64& rng, long bound) {
  while (true) {
    FieldElem x = random_integral(t, rng, bound);
    if (!x.is_zero()) return x;
  }
}

/// Z-basis coordinates of an integral element (inverse of from_basis_coeffs).
inline std::vector<long> basis_coeffs(const FieldElem& x) {
  std::vector<long> out;
  for (const auto& c : x.coords()) {
    out.push_back(c.a().get_num().get_si());
    out.push_back(c.b().get_num().get_si());
  }
  return out;
}

/// Random integral element of valuation exactly 0 at p.
inline FieldElem random_unit_valuation(const TowerPtr& t, const QuadElem& p, std::mt19937_64& rng, long bound) {
  while (true) {
    FieldElem x = random_nonzero(t, rng, bound);
    if (valuation(x, p) == 0) return x;
  }
}

}  // namespace macdecay::testing
