#include "macdecay/finite_field.hpp"

#include "macdecay/error.hpp"
#include "macdecay/ring_core.hpp"

namespace macdecay {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mod_big(const BigInt& v, std::uint64_t m) {
  BigInt r = v % BigInt(static_cast<unsigned long>(m));
  if (sgn(r) < 0) r += static_cast<unsigned long>(m);
  return r.get_ui();
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

FqField::FqField(const QuadElem& p) {
  if (!p.is_integral() || p.is_zero()) throw PreconditionError("residue field of non-integral or zero element");
  const BigRat n = p.norm();
  if (n.get_den() != 1 || !n.get_num().fits_ulong_p()) throw PreconditionError("residue field: norm too large");
  const std::uint64_t norm = n.get_num().get_ui();

  if (p.tag() == RingTag::Rational) {
    const BigInt a = abs(p.a().get_num());
    if (!a.fits_ulong_p() || !is_prime_u64(a.get_ui())) throw PreconditionError(p.to_string() + " is not prime in Z");
    ell_ = a.get_ui();
    degree_ = 1;
    return;
  }

  if (is_prime_u64(norm)) {
    ell_ = norm;
    degree_ = 1;
    // a + b*r == 0 (mod ell) for r the image of mu
    const std::uint64_t a = mod_big(p.a().get_num(), ell_);
    const std::uint64_t b = mod_big(p.b().get_num(), ell_);
    if (b == 0) throw PreconditionError(p.to_string() + " is not prime in O_K");
    FqElem binv = inv({b, 0});
    mu_root_ = static_cast<std::uint64_t>((static_cast<u128>(ell_ - a) % ell_) * binv.c0 % ell_);
    return;
  }

  // Otherwise p must be a unit times a rational prime inert in K.
  std::uint64_t ell = 0;
  for (std::uint64_t d = 2; d * d <= norm; ++d)
    if (d * d == norm) ell = d;
  if (ell == 0 || !is_prime_u64(ell) || !try_div_exact(p, QuadElem(static_cast<long>(ell))))
    throw PreconditionError(p.to_string() + " is not prime in O_K");
  ell_ = ell;
  degree_ = 2;
  if (p.tag() == RingTag::Gaussian) {
    s_ = 0;
    r_ = ell_ - 1;  // mu^2 = -1
  } else {
    s_ = 1;
    r_ = ell_ - 1;  // mu^2 = mu - 1
  }
  // The minimal polynomial of mu must stay irreducible, i.e. ell inert in K.
  for (std::uint64_t t = 0; t < ell_; ++t) {
    const std::uint64_t lhs = static_cast<std::uint64_t>(static_cast<u128>(t) * t % ell_);
    const std::uint64_t rhs = static_cast<std::uint64_t>((static_cast<u128>(s_) * t + r_) % ell_);
    if (lhs == rhs) throw PreconditionError(p.to_string() + " is not prime in O_K");
  }
}

std::uint64_t FqField::mod(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(ell_);
  if (r < 0) r += static_cast<std::int64_t>(ell_);
  return static_cast<std::uint64_t>(r);
}

FqElem FqField::from_int(std::int64_t v) const { return {mod(v), 0}; }

FqElem FqField::reduce(const QuadElem& x) const {
  if (!x.is_integral()) throw PreconditionError("cannot reduce non-integral " + x.to_string());
  const std::uint64_t a = mod_big(x.a().get_num(), ell_);
  const std::uint64_t b = mod_big(x.b().get_num(), ell_);
  if (degree_ == 1) return {static_cast<std::uint64_t>((a + static_cast<u128>(b) * mu_root_) % ell_), 0};
  return {a, b};
}

FqElem FqField::add(FqElem x, FqElem y) const { return {(x.c0 + y.c0) % ell_, (x.c1 + y.c1) % ell_}; }

FqElem FqField::neg(FqElem x) const { return {(ell_ - x.c0) % ell_, (ell_ - x.c1) % ell_}; }

FqElem FqField::sub(FqElem x, FqElem y) const { return add(x, neg(y)); }

FqElem FqField::mul(FqElem x, FqElem y) const {
  const u128 l = ell_;
  if (degree_ == 1) return {static_cast<std::uint64_t>(static_cast<u128>(x.c0) * y.c0 % l), 0};
  const u128 hi = static_cast<u128>(x.c1) * y.c1 % l;
  const u128 c0 = (static_cast<u128>(x.c0) * y.c0 + hi * r_) % l;
  const u128 c1 = (static_cast<u128>(x.c0) * y.c1 + static_cast<u128>(x.c1) * y.c0 + hi * s_) % l;
  return {static_cast<std::uint64_t>(c0), static_cast<std::uint64_t>(c1)};
}

FqElem FqField::pow(FqElem x, std::uint64_t e) const {
  FqElem acc{1, 0};
  while (e != 0) {
    if (e & 1U) acc = mul(acc, x);
    x = mul(x, x);
    e >>= 1U;
  }
  return acc;
}

FqElem FqField::inv(FqElem x) const {
  if (is_zero(x)) throw DivisionByZero();
  return pow(x, order() - 2);
}

FqPoly FqPolyRing::trim(FqPoly a) const {
  while (!a.empty() && k_.is_zero(a.back())) a.pop_back();
  return a;
}

FqPoly FqPolyRing::sub(const FqPoly& a, const FqPoly& b) const {
  FqPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const FqElem x = i < a.size() ? a[i] : FqElem{};
    const FqElem y = i < b.size() ? b[i] : FqElem{};
    r[i] = k_.sub(x, y);
  }
  return trim(std::move(r));
}

FqPoly FqPolyRing::mul(const FqPoly& a, const FqPoly& b) const {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = k_.add(r[i + j], k_.mul(a[i], b[j]));
  return trim(std::move(r));
}

FqPoly FqPolyRing::mod(const FqPoly& a, const FqPoly& m) const {
  FqPoly mm = trim(m);
  if (mm.empty()) throw DivisionByZero();
  FqPoly r = trim(a);
  const FqElem inv = k_.inv(mm.back());
  while (r.size() >= mm.size()) {
    const FqElem f = k_.mul(r.back(), inv);
    const std::size_t shift = r.size() - mm.size();
    for (std::size_t j = 0; j < mm.size(); ++j) r[shift + j] = k_.sub(r[shift + j], k_.mul(f, mm[j]));
    r = trim(std::move(r));
  }
  return r;
}

FqPoly FqPolyRing::gcd(FqPoly a, FqPoly b) const {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    FqPoly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const FqElem inv = k_.inv(a.back());
    for (auto& c : a) c = k_.mul(c, inv);
  }
  return a;
}

FqPoly FqPolyRing::powmod(const FqPoly& base, std::uint64_t e, const FqPoly& m) const {
  FqPoly acc = mod({FqElem{1, 0}}, m);
  FqPoly b = mod(base, m);
  while (e != 0) {
    if (e & 1U) acc = mod(mul(acc, b), m);
    b = mod(mul(b, b), m);
    e >>= 1U;
  }
  return acc;
}

FqElem FqPolyRing::eval(const FqPoly& a, FqElem x) const {
  FqElem acc{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = k_.add(k_.mul(acc, x), *it);
  return acc;
}

bool is_irreducible(const FqPolyRing& ring, const FqPoly& f_in) {
  const FqField& k = ring.field();
  const FqPoly f = ring.trim(f_in);
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  const std::uint64_t q = k.order();
  if (n <= 3 && q <= 100000) {
    for (std::uint64_t i = 0; i < q; ++i)
      if (k.is_zero(ring.eval(f, k.element(i)))) return false;
    return true;
  }
  const FqPoly x{FqElem{}, FqElem{1, 0}};
  // frob[i] = x^(q^i) mod f
  std::vector<FqPoly> frob{ring.mod(x, f)};
  for (int i = 1; i <= n; ++i) frob.push_back(ring.powmod(frob.back(), q, f));
  if (ring.sub(frob[static_cast<std::size_t>(n)], ring.mod(x, f)).size() != 0) return false;
  int rest = n;
  for (int r = 2; r <= rest; ++r) {
    if (rest % r != 0) continue;
    while (rest % r == 0) rest /= r;
    const FqPoly g = ring.gcd(ring.sub(frob[static_cast<std::size_t>(n / r)], x), f);
    if (g.size() > 1) return false;
  }
  return true;
}

FqPoly reduce_poly(const FqField& field, const Poly<QuadElem>& f) {
  FqPoly r;
  r.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) r.push_back(field.reduce(c));
  while (!r.empty() && field.is_zero(r.back())) r.pop_back();
  return r;
}

}  // namespace macdecay
