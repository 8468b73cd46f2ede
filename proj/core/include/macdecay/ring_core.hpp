#pragma once

// Exact arithmetic substrate: rationals, O_K for K = Q(i) or Q(sqrt-3),
// polynomials and residue fields.

#include "macdecay/error.hpp"
#include "macdecay/finite_field.hpp"
#include "macdecay/poly.hpp"
#include "macdecay/quad.hpp"

namespace macdecay {

/// disc(f) for monic f with coefficients in K.
QuadElem poly_discriminant(const Poly<QuadElem>& f);

/// True iff f reduced modulo the O_K-prime p is irreducible over F_N(p).
///
/// Requires f monic and O_K-integral and v_p(disc f) = 0; otherwise the
/// answer says nothing about inertness and PreconditionError is thrown.
bool is_irreducible_mod_p(const Poly<QuadElem>& f, const QuadElem& p);

/// True iff p generates a prime ideal of O_K (up to the unit group).
bool is_ok_prime(const QuadElem& p);

/// Rational primes up to `bound`, by trial division.
std::vector<long> small_primes(long bound);

/// Lift an integer polynomial into K[x].
Poly<QuadElem> to_quad_poly(const Poly<BigInt>& f, RingTag tag);

}  // namespace macdecay
