#include "macdecay/ring_core.hpp"

namespace macdecay {

QuadElem poly_discriminant(const Poly<QuadElem>& f) {
  if (f.degree() < 2) throw PreconditionError("poly_discriminant: degree must be >= 2");
  return discriminant(f);
}

bool is_ok_prime(const QuadElem& p) {
  try {
    FqField field(p);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

bool is_irreducible_mod_p(const Poly<QuadElem>& f, const QuadElem& p) {
  if (f.degree() < 1 || !(f.leading() == QuadElem(1))) throw PreconditionError("is_irreducible_mod_p: f must be monic");
  for (const auto& c : f.coeffs())
    if (!c.is_integral()) throw PreconditionError("is_irreducible_mod_p: f must have O_K coefficients");
  FqField field(p);
  if (f.degree() >= 2) {
    const QuadElem disc = poly_discriminant(f);
    if (ok_valuation(disc, p) != 0)
      throw PreconditionError("inertness test inconclusive: " + p.to_string() + " divides disc(f) = " + disc.to_string());
  }
  FqPolyRing ring(field);
  return is_irreducible(ring, reduce_poly(field, f));
}

std::vector<long> small_primes(long bound) {
  std::vector<long> out;
  for (long n = 2; n <= bound; ++n) {
    bool prime = true;
    for (long d : out) {
      if (d * d > n) break;
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(n);
  }
  return out;
}

Poly<QuadElem> to_quad_poly(const Poly<BigInt>& f, RingTag tag) {
  std::vector<QuadElem> c;
  c.reserve(f.coeffs().size());
  for (const auto& v : f.coeffs()) c.emplace_back(BigRat(v), BigRat(0), tag);
  return Poly<QuadElem>(std::move(c));
}

}  // namespace macdecay
