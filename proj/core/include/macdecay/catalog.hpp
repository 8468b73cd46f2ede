#pragma once

#include <vector>

#include "macdecay/poly.hpp"
#include "macdecay/quad.hpp"
#include "macdecay/tower.hpp"

namespace macdecay {

/// Real subfield of Q(zeta_m) fixed by a subgroup H of (Z/m)* with -1 in H.
struct PeriodSpec {
  int m = 0;
  std::vector<int> subgroup_gens;

  std::vector<int> subgroup() const;
  std::vector<int> unit_group() const;
  int degree() const;
  /// Throws PreconditionError unless m is odd >= 5 and -1 is in H.
  void validate() const;

  /// The unique subgroup of index `degree` for prime m (needs -1 in H).
  static PeriodSpec for_degree(int m, int degree);
};

/// Smallest prime m >= 5 whose real cyclotomic subfield has a subfield of the given degree.
int smallest_prime_conductor(int degree);

/// prod over cosets c of (x - eta_c), eta_c = sum_{h in cH} zeta_m^h, expanded exactly.
Poly<BigInt> period_min_poly(const PeriodSpec& ps);

/// Smallest positive g0 whose class generates (Z/m)* / H.
int smallest_quotient_generator(const PeriodSpec& ps);

/// g with eta_{g0} = g(eta_1), deg g < degree; solved exactly in Z[zeta_m].
Poly<BigRat> sigma_image_poly(const PeriodSpec& ps, int g0);

/// K(eta_1) with sigma: zeta -> zeta^g0 for the smallest generator g0.
TowerPtr make_period_tower(const PeriodSpec& ps, RingTag field, int users, int antennas, int precision_bits = 256);

/// All primes of O_K with norm <= bound, one per associate class
/// (canonical_associate form), sorted by norm then coordinates.
std::vector<QuadElem> ok_primes_up_to(RingTag field, long norm_bound);

/// Primes p of O_K with N(p) <= bound, v_p(disc f) = 0 and f irreducible mod p.
std::vector<QuadElem> find_inert_primes(const Tower& tower, long norm_bound);

struct CatalogRow {
  int degree = 0;
  PeriodSpec spec;
  Poly<BigInt> f;
  std::vector<QuadElem> gaussian_primes;
  std::vector<QuadElem> eisenstein_primes;
};

/// One row per degree 2..max_degree using the smallest prime conductor.
std::vector<CatalogRow> catalog_rows(int max_degree, long norm_bound);

}  // namespace macdecay
