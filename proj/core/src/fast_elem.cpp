#include "macdecay/fast_elem.hpp"

#include "macdecay/field_elem.hpp"

namespace macdecay {

namespace {

bool to_quad_int(const QuadElem& q, QuadInt& out) {
  if (!q.is_integral()) return false;
  const BigInt& a = q.a().get_num();
  const BigInt& b = q.b().get_num();
  if (!a.fits_slong_p() || !b.fits_slong_p()) return false;
  out = {a.get_si(), b.get_si()};
  return true;
}

}  // namespace

std::unique_ptr<FastRing> FastRing::build(const Tower& tower) {
  const int d = tower.degree();
  if (d > kMaxFastDegree) return nullptr;
  auto r = std::make_unique<FastRing>();
  r->d_ = d;
  r->tag_ = tower.field();
  r->theta_ = tower.theta_approx();
  // theta^(d+e) rows, built from f directly
  if (d >= 2) {
    std::array<QuadInt, kMaxFastDegree> row{};
    for (int i = 0; i < d; ++i)
      if (!to_quad_int(-tower.f()[i], row[static_cast<std::size_t>(i)])) return nullptr;
    r->reduce_[0] = row;
    try {
      for (int e = 1; e <= d - 2; ++e) {
        const auto& prev = r->reduce_[static_cast<std::size_t>(e - 1)];
        std::array<QuadInt, kMaxFastDegree> next{};
        for (int i = 1; i < d; ++i) next[static_cast<std::size_t>(i)] = prev[static_cast<std::size_t>(i - 1)];
        const QuadInt top = prev[static_cast<std::size_t>(d - 1)];
        for (int i = 0; i < d; ++i) {
          const QuadInt t = r->mul(top, row[static_cast<std::size_t>(i)]);
          auto& slot = next[static_cast<std::size_t>(i)];
          slot = {checked::add(slot.a, t.a), checked::add(slot.b, t.b)};
        }
        r->reduce_[static_cast<std::size_t>(e)] = next;
      }
    } catch (const ArithmeticOverflow&) {
      return nullptr;
    }
  }
  BigInt den = 1;
  for (int j = 0; j < d; ++j)
    for (const auto& e : tower.sigma_matrix(j).data()) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.a().get_den_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.b().get_den_mpz_t());
    }
  if (!den.fits_slong_p()) return nullptr;
  r->den_ = den.get_si();
  for (int j = 0; j < d; ++j) {
    const Matrix<QuadElem>& s = tower.sigma_matrix(j);
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        if (!to_quad_int(QuadElem(BigRat(den)) * s(k, i), r->sigma_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]))
          return nullptr;
  }
  return r;
}

IntElem IntElem::from_basis_coeffs(const FastRing* ring, std::span<const std::int64_t> coeffs) {
  IntElem x(ring);
  const int d = ring->degree();
  if (static_cast<int>(coeffs.size()) != 2 * d) throw PreconditionError("from_basis_coeffs: expected 2*degree coefficients");
  for (int a = 0; a < d; ++a)
    x.c_[static_cast<std::size_t>(a)] = {coeffs[static_cast<std::size_t>(2 * a)], coeffs[static_cast<std::size_t>(2 * a + 1)]};
  return x;
}

IntElem IntElem::from_quad(const FastRing* ring, QuadInt c) {
  IntElem x(ring);
  x.c_[0] = c;
  return x;
}

IntElem IntElem::from_field(const FastRing* ring, const FieldElem& f) {
  IntElem x(ring);
  for (int i = 0; i < ring->degree(); ++i) {
    const QuadElem& c = f.coord(i);
    if (!c.is_integral()) throw PreconditionError("IntElem: non-integral coordinate " + c.to_string());
    if (!to_quad_int(c, x.c_[static_cast<std::size_t>(i)])) throw ArithmeticOverflow();
  }
  return x;
}

FieldElem IntElem::to_field(const TowerPtr& tower) const {
  std::vector<QuadElem> v;
  v.reserve(static_cast<std::size_t>(ring_->degree()));
  for (int i = 0; i < ring_->degree(); ++i) {
    const QuadInt c = c_[static_cast<std::size_t>(i)];
    v.emplace_back(BigRat(c.a), BigRat(c.b), tower->field());
  }
  return {tower, std::move(v)};
}

IntElem operator*(const IntElem& x, const IntElem& y) {
  const FastRing& r = *x.ring_;
  const int d = r.degree();
  std::array<QuadInt, 2 * kMaxFastDegree - 1> prod{};
  for (int i = 0; i < d; ++i) {
    const QuadInt xi = x.c_[static_cast<std::size_t>(i)];
    if (xi.a == 0 && xi.b == 0) continue;
    for (int j = 0; j < d; ++j) {
      const QuadInt yj = y.c_[static_cast<std::size_t>(j)];
      if (yj.a == 0 && yj.b == 0) continue;
      const QuadInt t = r.mul(xi, yj);
      auto& slot = prod[static_cast<std::size_t>(i + j)];
      slot = {checked::add(slot.a, t.a), checked::add(slot.b, t.b)};
    }
  }
  IntElem out(x.ring_);
  for (int i = 0; i < d; ++i) out.c_[static_cast<std::size_t>(i)] = prod[static_cast<std::size_t>(i)];
  for (int e = d; e < 2 * d - 1; ++e) {
    const QuadInt c = prod[static_cast<std::size_t>(e)];
    if (c.a == 0 && c.b == 0) continue;
    const auto& row = r.reduction(e - d);
    for (int i = 0; i < d; ++i) {
      const QuadInt t = r.mul(c, row[static_cast<std::size_t>(i)]);
      auto& slot = out.c_[static_cast<std::size_t>(i)];
      slot = {checked::add(slot.a, t.a), checked::add(slot.b, t.b)};
    }
  }
  return out;
}

IntElem IntElem::scaled(QuadInt s) const {
  IntElem out(ring_);
  for (int i = 0; i < ring_->degree(); ++i) out.c_[static_cast<std::size_t>(i)] = ring_->mul(c_[static_cast<std::size_t>(i)], s);
  return out;
}

IntElem IntElem::sigma_scaled(int j) const {
  const int d = ring_->degree();
  const int jj = ((j % d) + d) % d;
  IntElem out(ring_);
  for (int i = 0; i < d; ++i) {
    const QuadInt xi = c_[static_cast<std::size_t>(i)];
    if (xi.a == 0 && xi.b == 0) continue;
    for (int k = 0; k < d; ++k) {
      const QuadInt s = ring_->sigma(jj, k, i);
      if (s.a == 0 && s.b == 0) continue;
      const QuadInt t = ring_->mul(s, xi);
      auto& slot = out.c_[static_cast<std::size_t>(k)];
      slot = {checked::add(slot.a, t.a), checked::add(slot.b, t.b)};
    }
  }
  return out;
}

IntElem IntElem::sigma(int j) const {
  if (j % ring_->degree() == 0) return *this;
  const std::int64_t den = ring_->sigma_den();
  IntElem out = sigma_scaled(j);
  if (den == 1) return out;
  for (int i = 0; i < ring_->degree(); ++i) {
    auto& c = out.c_[static_cast<std::size_t>(i)];
    if (c.a % den != 0 || c.b % den != 0) throw ArithmeticOverflow();
    c = {c.a / den, c.b / den};
  }
  return out;
}

IntElem IntElem::conj() const {
  IntElem out(ring_);
  for (int i = 0; i < ring_->degree(); ++i) {
    const QuadInt c = c_[static_cast<std::size_t>(i)];
    out.c_[static_cast<std::size_t>(i)] =
        ring_->tag() == RingTag::Eisenstein ? QuadInt{checked::add(c.a, c.b), checked::sub(0, c.b)} : QuadInt{c.a, checked::sub(0, c.b)};
  }
  return out;
}

}  // namespace macdecay
