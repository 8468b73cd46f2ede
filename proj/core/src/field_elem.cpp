#include "macdecay/field_elem.hpp"

#include <sstream>

#include "macdecay/error.hpp"

namespace macdecay {

namespace {

std::vector<QuadElem> zeros(const Tower& t) { return std::vector<QuadElem>(static_cast<std::size_t>(t.degree()), QuadElem(0)); }

RatInterval horner(const std::vector<BigRat>& c, const RatInterval& x, int bits) {
  RatInterval acc = RatInterval::point(BigRat(0));
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * x + RatInterval::point(*it);
    acc = acc.round_outward(bits + 32);
  }
  return acc;
}

void require_real_f(const Tower& t) {
  for (const auto& c : t.f().coeffs())
    if (sgn(c.b()) != 0) throw PreconditionError("complex conjugation needs a real minimal polynomial");
}

}  // namespace

FieldElem::FieldElem(TowerPtr tower, std::vector<QuadElem> coords) : tower_(std::move(tower)), c_(std::move(coords)) {
  if (!tower_) throw PreconditionError("FieldElem without tower");
  if (static_cast<int>(c_.size()) != tower_->degree()) throw PreconditionError("FieldElem: wrong number of coordinates");
}

FieldElem FieldElem::zero(const TowerPtr& t) { return {t, zeros(*t)}; }

FieldElem FieldElem::one(const TowerPtr& t) { return scalar(t, QuadElem(1)); }

FieldElem FieldElem::scalar(const TowerPtr& t, const QuadElem& c) {
  auto v = zeros(*t);
  v[0] = c;
  return {t, std::move(v)};
}

FieldElem FieldElem::theta(const TowerPtr& t) {
  if (t->degree() == 1) return scalar(t, -t->f()[0]);
  auto v = zeros(*t);
  v[1] = QuadElem(1);
  return {t, std::move(v)};
}

FieldElem FieldElem::from_basis_coeffs(const TowerPtr& t, std::span<const long> coeffs) {
  const int d = t->degree();
  if (static_cast<int>(coeffs.size()) != 2 * d) throw PreconditionError("from_basis_coeffs: expected 2*degree coefficients");
  std::vector<QuadElem> v;
  v.reserve(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a)
    v.emplace_back(BigRat(coeffs[static_cast<std::size_t>(2 * a)]), BigRat(coeffs[static_cast<std::size_t>(2 * a + 1)]), t->field());
  return {t, std::move(v)};
}

bool FieldElem::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool FieldElem::is_integral() const {
  for (const auto& c : c_)
    if (!c.is_integral()) return false;
  return true;
}

bool FieldElem::in_base_field() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

void FieldElem::check_same(const FieldElem& o) const {
  if (tower_ != o.tower_) throw PreconditionError("FieldElem: operands live in different towers");
}

FieldElem FieldElem::operator-() const {
  FieldElem r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  check_same(o);
  c_ = tower_->mulmod(c_, o.c_);
  return *this;
}

FieldElem& FieldElem::operator*=(const QuadElem& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw DivisionByZero();
  const Tower& t = *tower_;
  Poly<QuadElem> r0 = t.f();
  Poly<QuadElem> r1{std::vector<QuadElem>(c_)};
  Poly<QuadElem> s0;
  Poly<QuadElem> s1{QuadElem(1)};
  while (!r1.is_zero()) {
    auto [q, rem] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    Poly<QuadElem> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) throw PreconditionError("inverse: element is a zero divisor (f reducible over K)");
  const QuadElem inv_g = r0[0].inverse();
  Poly<QuadElem> u = (inv_g * s0) % t.f();
  std::vector<QuadElem> v = zeros(t);
  for (int i = 0; i <= u.degree(); ++i) v[static_cast<std::size_t>(i)] = u[i];
  return {tower_, std::move(v)};
}

std::string FieldElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const bool compound = sgn(c_[i].a()) != 0 && sgn(c_[i].b()) != 0;
    if (i == 0) {
      os << c_[i];
    } else {
      if (!(c_[i] == QuadElem(1))) os << (compound ? "(" : "") << c_[i] << (compound ? ")" : "") << '*';
      os << 't';
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  return os.str();
}

FieldElem apply_sigma(const FieldElem& x, int j) {
  const Tower& t = *x.tower();
  const int d = t.degree();
  if (((j % d) + d) % d == 0) return x;
  const Matrix<QuadElem>& s = t.sigma_matrix(j);
  std::vector<QuadElem> r = zeros(t);
  for (int i = 0; i < d; ++i) {
    const QuadElem& xi = x.coord(i);
    if (xi.is_zero()) continue;
    for (int k = 0; k < d; ++k) {
      if (s(k, i).is_zero()) continue;
      r[static_cast<std::size_t>(k)] += s(k, i) * xi;
    }
  }
  return {x.tower(), std::move(r)};
}

FieldElem apply_tau(const FieldElem& x, int times) { return apply_sigma(x, times * x.tower()->users()); }

FieldElem rel_norm(const FieldElem& x, NormLevel level) {
  const Tower& t = *x.tower();
  const int factors = level == NormLevel::LOverF ? t.antennas() : t.degree();
  const int step = level == NormLevel::LOverF ? t.users() : 1;
  FieldElem acc = x;
  for (int i = 1; i < factors; ++i) acc *= apply_sigma(x, i * step);
  return acc;
}

int valuation(const FieldElem& x, const QuadElem& p) {
  if (ok_valuation(x.tower()->discriminant(), p) != 0)
    throw PreconditionError("valuation: " + p.to_string() + " divides disc(f); O_K[theta] may not be maximal at p");
  if (x.is_zero()) return kInfiniteValuation;
  BigInt n = 1;
  for (const auto& c : x.coords()) {
    mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), c.a().get_den_mpz_t());
    mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), c.b().get_den_mpz_t());
  }
  const QuadElem scale{BigRat(n)};
  int v = kInfiniteValuation;
  for (const auto& c : x.coords())
    if (!c.is_zero()) v = std::min(v, ok_valuation(scale * c, p));
  return v - ok_valuation(scale, p);
}

FieldElem conj_complex(const FieldElem& x) {
  require_real_f(*x.tower());
  std::vector<QuadElem> r;
  r.reserve(x.coords().size());
  for (const auto& c : x.coords()) r.push_back(c.conj());
  return {x.tower(), std::move(r)};
}

ComplexEnclosure embed_numeric(const FieldElem& x, int bits) {
  const Tower& t = *x.tower();
  std::vector<BigRat> re;
  std::vector<BigRat> im;
  for (const auto& c : x.coords()) {
    if (t.field() == RingTag::Eisenstein) {
      // a + b*omega = (a + b/2) + (b/2) sqrt(3) i
      re.push_back(c.a() + c.b() / 2);
      im.push_back(c.b() / 2);
    } else {
      re.push_back(c.a());
      im.push_back(c.b());
    }
  }
  const RatInterval th = t.theta_enclosure(bits);
  ComplexEnclosure out{horner(re, th, bits), horner(im, th, bits)};
  if (t.field() == RingTag::Eisenstein) out.im = (out.im * t.sqrt3_enclosure(bits)).round_outward(bits + 32);
  return out;
}

std::complex<double> embed_double(const FieldElem& x) {
  const Tower& t = *x.tower();
  const std::complex<double> mu = t.field() == RingTag::Eisenstein ? std::complex<double>(0.5, std::sqrt(3.0) / 2)
                                                                    : std::complex<double>(0, 1);
  std::complex<double> acc = 0;
  const double th = t.theta_approx();
  for (auto it = x.coords().rbegin(); it != x.coords().rend(); ++it)
    acc = acc * th + (it->a().get_d() + it->b().get_d() * mu);
  return acc;
}

int real_sign(const Tower& tower, std::span<const BigRat> coeffs, int start_bits) {
  bool all_zero = true;
  for (const auto& c : coeffs)
    if (sgn(c) != 0) all_zero = false;
  if (all_zero) return 0;
  const std::vector<BigRat> c(coeffs.begin(), coeffs.end());
  for (int bits = std::max(start_bits, 16); bits <= (1 << 20); bits *= 2) {
    const int s = horner(c, tower.theta_enclosure(bits), bits).sign();
    if (s != 0) return s;
  }
  throw Error("real_sign: precision escalation did not separate a nonzero value from zero");
}

}  // namespace macdecay
