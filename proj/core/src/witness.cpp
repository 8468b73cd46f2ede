#include "macdecay/witness.hpp"

#include "macdecay/error.hpp"

namespace macdecay {

namespace {

void require_quadratic(const FieldElem& x) {
  if (!x.tower() || x.tower()->degree() != 2) throw PreconditionError("two-user test needs [L:K] = 2");
}

QuadElem norm_lk(const FieldElem& x) { return rel_norm(x, NormLevel::LOverK).coord(0); }

/// Multiplies x by the lcm of its rational denominators.
FieldElem clear_denominators(const FieldElem& x) {
  BigInt l = 1;
  for (const auto& c : x.coords()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.a().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.b().get_den_mpz_t());
  }
  return QuadElem(BigRat(l)) * x;
}

}  // namespace

QuadElem two_user_norm_det(const FieldElem& a, const FieldElem& b, const FieldElem& c, const FieldElem& d) {
  for (const auto* x : {&a, &b, &c, &d}) require_quadratic(*x);
  return norm_lk(a) * norm_lk(d) - norm_lk(b) * norm_lk(c);
}

bool two_user_singularity_test(const FieldElem& a, const FieldElem& b, const FieldElem& c, const FieldElem& d) {
  return two_user_norm_det(a, b, c, d).is_zero();
}

FieldElem two_user_det(const FieldElem& a, const FieldElem& b, const FieldElem& c, const FieldElem& d, const FieldElem& x,
                       const FieldElem& y) {
  return a * x * d * apply_sigma(y, 1) - b * apply_sigma(x, 1) * c * y;
}

std::optional<std::pair<FieldElem, FieldElem>> zero_det_witness_2user(const FieldElem& a, const FieldElem& b, const FieldElem& c,
                                                                      const FieldElem& d) {
  if (!two_user_singularity_test(a, b, c, d)) return std::nullopt;
  const auto& t = a.tower();
  const FieldElem one = FieldElem::one(t);
  std::pair<FieldElem, FieldElem> w;
  if (b.is_zero() || c.is_zero()) {
    // N(a)N(d) = 0 here, so a or d vanishes and the first or second column is zero.
    w = {one, one};
  } else if (a.is_zero() || d.is_zero()) {
    // N(b)N(c) = 0 then, contradicting the branch above.
    throw Error("zero_det_witness_2user: inconsistent norm test");
  } else {
    const FieldElem alpha = b * c * (a * d).inverse();
    const FieldElem mu = FieldElem::scalar(t, QuadElem::mu(t->field()));
    const FieldElem th = FieldElem::theta(t);
    std::optional<FieldElem> z;
    for (const FieldElem& g : {one, mu, th, mu * th}) {
      FieldElem cand = g + alpha * apply_sigma(g, 1);
      if (!cand.is_zero()) {
        z = std::move(cand);
        break;
      }
    }
    if (!z) throw Error("zero_det_witness_2user: every Hilbert 90 candidate vanished");
    w = {clear_denominators(*z), one};
  }
  if (!two_user_det(a, b, c, d, w.first, w.second).is_zero() || w.first.is_zero() || !w.first.is_integral())
    throw Error("zero_det_witness_2user: constructed witness does not verify");
  return w;
}

}  // namespace macdecay
