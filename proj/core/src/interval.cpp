#include "macdecay/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace macdecay {

namespace {

class Mpfr {
 public:
  explicit Mpfr(int bits) { mpfr_init2(v_, bits); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

std::string format(mpfr_ptr x, int digits) {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, x);
  return buf.data();
}

}  // namespace

RatInterval RatInterval::round_outward(int bits) const {
  BigInt scale = BigInt(1) << bits;
  BigInt l = lo.get_num() * scale;
  BigInt h = hi.get_num() * scale;
  mpz_fdiv_q(l.get_mpz_t(), l.get_mpz_t(), lo.get_den().get_mpz_t());
  mpz_cdiv_q(h.get_mpz_t(), h.get_mpz_t(), hi.get_den().get_mpz_t());
  RatInterval r{BigRat(l, scale), BigRat(h, scale)};
  r.lo.canonicalize();
  r.hi.canonicalize();
  return r;
}

RatInterval operator*(const RatInterval& x, const RatInterval& y) {
  std::array<BigRat, 4> p{x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
  auto [mn, mx] = std::minmax_element(p.begin(), p.end());
  return {*mn, *mx};
}

RatInterval operator*(const BigRat& s, const RatInterval& x) {
  if (sgn(s) >= 0) return {s * x.lo, s * x.hi};
  return {s * x.hi, s * x.lo};
}

RatInterval ComplexEnclosure::abs2() const {
  auto sq = [](const RatInterval& v) {
    if (v.contains_zero()) return RatInterval{BigRat(0), std::max(v.lo * v.lo, v.hi * v.hi)};
    RatInterval r = v * v;
    return r;
  };
  return sq(re) + sq(im);
}

double to_double_down(const BigRat& x) {
  double d = x.get_d();
  if (BigRat(d) > x) d = std::nextafter(d, -HUGE_VAL);
  return d;
}

double to_double_up(const BigRat& x) {
  double d = x.get_d();
  if (BigRat(d) < x) d = std::nextafter(d, HUGE_VAL);
  return d;
}

double ComplexEnclosure::radius() const {
  BigRat w = std::max(re.width(), im.width()) / 2;
  return to_double_up(w);
}

RealBall sqrt_ball(const RatInterval& x, int bits, int digits) {
  Mpfr lo(bits), hi(bits), mid(bits), rad(bits);
  mpfr_set_q(lo.get(), x.lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), x.hi.get_mpq_t(), MPFR_RNDU);
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  mpfr_sub(rad.get(), hi.get(), lo.get(), MPFR_RNDU);
  mpfr_div_2ui(rad.get(), rad.get(), 1, MPFR_RNDU);
  RealBall out;
  out.mid = format(mid.get(), digits);
  out.value = mpfr_get_d(mid.get(), MPFR_RNDN);
  // Midpoint rounding is at most half an ulp of `bits`; absorb it into the radius.
  const double ulp = std::ldexp(std::fabs(out.value), -bits + 2);
  out.radius = mpfr_get_d(rad.get(), MPFR_RNDU) + ulp;
  return out;
}

RealBall to_ball(const RatInterval& x, int bits, int digits) {
  Mpfr mid(bits);
  const BigRat m = x.mid();
  mpfr_set_q(mid.get(), m.get_mpq_t(), MPFR_RNDN);
  RealBall out;
  out.mid = format(mid.get(), digits);
  out.value = mpfr_get_d(mid.get(), MPFR_RNDN);
  out.radius = to_double_up(x.width() / 2) + std::ldexp(std::fabs(out.value), -bits + 2);
  return out;
}

}  // namespace macdecay
