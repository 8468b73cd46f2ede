#include "macdecay/tower.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "macdecay/error.hpp"
#include "macdecay/fast_elem.hpp"
#include "macdecay/ring_core.hpp"

namespace macdecay {

namespace {

std::vector<int> subgroup_elements(int m, const std::vector<int>& gens) {
  std::set<int> h{1};
  std::vector<int> frontier{1};
  while (!frontier.empty()) {
    const int a = frontier.back();
    frontier.pop_back();
    for (int g : gens) {
      const int b = static_cast<int>((static_cast<long>(a) * (((g % m) + m) % m)) % m);
      if (h.insert(b).second) frontier.push_back(b);
    }
  }
  return {h.begin(), h.end()};
}

BigRat eval_rational(const Poly<QuadElem>& f, const BigRat& x) {
  BigRat acc(0);
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * x + it->a();
  return acc;
}

// Shrink [lo, hi] around a simple root of a rational polynomial until width <= 2^-bits.
RatInterval bisect(const Poly<QuadElem>& f, RatInterval iv, int bits) {
  const BigRat target = BigRat(1, 1) / BigRat(BigInt(1) << bits);
  int sign_lo = sgn(eval_rational(f, iv.lo));
  while (iv.width() > target) {
    BigRat mid = iv.mid();
    const int s = sgn(eval_rational(f, mid));
    if (s == 0) return RatInterval::point(mid);
    if (s == sign_lo) {
      iv.lo = std::move(mid);
    } else {
      iv.hi = std::move(mid);
    }
  }
  return iv;
}

}  // namespace

double ThetaHint::approximate() const {
  if (value) return *value;
  if (m <= 0) throw PreconditionError("theta hint needs either a value or a conductor m");
  const auto h = subgroup_elements(m, subgroup_gens.empty() ? std::vector<int>{m - 1} : subgroup_gens);
  long double sum = 0;
  for (int e : h) {
    const long a = (static_cast<long>(coset) * e) % m;
    sum += std::cos(2.0L * std::numbers::pi_v<long double> * static_cast<long double>(a) / m);
  }
  return static_cast<double>(sum);
}

Tower::Tower(TowerParams p) : p_(std::move(p)) {}

Tower::~Tower() = default;

std::shared_ptr<const Tower> Tower::create(TowerParams params) {
  std::shared_ptr<Tower> t(new Tower(std::move(params)));
  t->build();
  return t;
}

std::vector<QuadElem> Tower::mulmod(const std::vector<QuadElem>& x, const std::vector<QuadElem>& y) const {
  const int d = degree_;
  std::vector<QuadElem> prod(static_cast<std::size_t>(2 * d - 1), QuadElem(0));
  for (int i = 0; i < d; ++i) {
    if (x[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (y[static_cast<std::size_t>(j)].is_zero()) continue;
      prod[static_cast<std::size_t>(i + j)] += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
    }
  }
  for (int e = d; e < 2 * d - 1; ++e) {
    const QuadElem& c = prod[static_cast<std::size_t>(e)];
    if (c.is_zero()) continue;
    const auto& row = reduction_[static_cast<std::size_t>(e - d)];
    for (int i = 0; i < d; ++i) prod[static_cast<std::size_t>(i)] += c * row[static_cast<std::size_t>(i)];
  }
  prod.resize(static_cast<std::size_t>(d));
  return prod;
}

const Matrix<QuadElem>& Tower::sigma_matrix(int j) const {
  const int d = degree_;
  const int jj = ((j % d) + d) % d;
  return sigma_pow_[static_cast<std::size_t>(jj)];
}

void Tower::build() {
  const int d = p_.f.degree();
  if (p_.users < 1 || p_.antennas < 1) throw PreconditionError("tower: U and n_t must be positive");
  if (d < 1 || d != p_.users * p_.antennas)
    throw PreconditionError("tower: deg f = " + std::to_string(d) + " but U*n_t = " + std::to_string(p_.users * p_.antennas));
  if (!(p_.f.leading() == QuadElem(1))) throw PreconditionError("tower: f must be monic");
  for (const auto& c : p_.f.coeffs()) {
    if (c.tag() != RingTag::Rational && c.tag() != p_.field) throw PreconditionError("tower: coefficient field mismatch");
    if (!c.is_integral()) throw PreconditionError("tower: f must have O_K-integral coefficients");
  }
  if (p_.field == RingTag::Rational) throw PreconditionError("tower: K must be Q(i) or Q(sqrt-3)");
  degree_ = d;

  // Retag coefficients so every product lands in K.
  {
    std::vector<QuadElem> fc;
    for (const auto& c : p_.f.coeffs()) fc.emplace_back(c.a(), c.b(), p_.field);
    p_.f = Poly<QuadElem>(std::move(fc));
  }

  reduction_.clear();
  if (d >= 2) {
    std::vector<QuadElem> row(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) row[static_cast<std::size_t>(i)] = -p_.f[i];
    reduction_.push_back(row);
    for (int e = 1; e <= d - 2; ++e) {
      const auto& prev = reduction_.back();
      std::vector<QuadElem> next(static_cast<std::size_t>(d), QuadElem(0));
      for (int i = 1; i < d; ++i) next[static_cast<std::size_t>(i)] = prev[static_cast<std::size_t>(i - 1)];
      const QuadElem top = prev[static_cast<std::size_t>(d - 1)];
      for (int i = 0; i < d; ++i) next[static_cast<std::size_t>(i)] += top * reduction_[0][static_cast<std::size_t>(i)];
      reduction_.push_back(std::move(next));
    }
  }

  disc_ = d >= 2 ? poly_discriminant(p_.f) : QuadElem(1);
  if (disc_.is_zero()) throw PreconditionError("tower: f is not squarefree");

  auto basis_vec = [&](int i) {
    std::vector<QuadElem> v(static_cast<std::size_t>(d), QuadElem(0));
    v[static_cast<std::size_t>(i)] = QuadElem(1);
    return v;
  };
  auto scalar_vec = [&](const QuadElem& c) {
    std::vector<QuadElem> v(static_cast<std::size_t>(d), QuadElem(0));
    v[0] = c;
    return v;
  };

  // g(theta) reduced modulo f.
  std::vector<QuadElem> g = scalar_vec(-p_.f[0]);
  if (d >= 2) {
    g = scalar_vec(QuadElem(0));
    std::vector<QuadElem> theta_pow = scalar_vec(QuadElem(1));
    const std::vector<QuadElem> th = basis_vec(1);
    for (int i = 0; i <= p_.sigma_image.degree(); ++i) {
      const QuadElem gi(p_.sigma_image[i]);
      for (int k = 0; k < d; ++k) g[static_cast<std::size_t>(k)] += gi * theta_pow[static_cast<std::size_t>(k)];
      theta_pow = mulmod(theta_pow, th);
    }
  }

  // sigma^0 = identity, sigma^1 from powers of g, sigma^j = sigma * sigma^(j-1).
  sigma_pow_.clear();
  Matrix<QuadElem> id(d, d, QuadElem(0));
  for (int i = 0; i < d; ++i) id(i, i) = QuadElem(1);
  sigma_pow_.push_back(id);
  if (d >= 2) {
    Matrix<QuadElem> s1(d, d, QuadElem(0));
    std::vector<QuadElem> pw = scalar_vec(QuadElem(1));
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) s1(k, i) = pw[static_cast<std::size_t>(k)];
      pw = mulmod(pw, g);
    }
    // f(g(theta)) == 0 makes theta -> g(theta) a well-defined automorphism.
    std::vector<QuadElem> fg = scalar_vec(QuadElem(0));
    std::vector<QuadElem> gp = scalar_vec(QuadElem(1));
    for (int i = 0; i <= d; ++i) {
      for (int k = 0; k < d; ++k) fg[static_cast<std::size_t>(k)] += p_.f[i] * gp[static_cast<std::size_t>(k)];
      gp = mulmod(gp, g);
    }
    for (const auto& c : fg)
      if (!c.is_zero()) throw PreconditionError("tower: f(g(theta)) != 0, sigma_image is not a root of f");

    for (int j = 1; j <= d; ++j) {
      const Matrix<QuadElem>& prev = sigma_pow_.back();
      Matrix<QuadElem> next(d, d, QuadElem(0));
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          QuadElem acc(0);
          for (int k = 0; k < d; ++k) acc += s1(r, k) * prev(k, c);
          next(r, c) = acc;
        }
      sigma_pow_.push_back(std::move(next));
    }
    if (!(sigma_pow_.back() == id)) throw PreconditionError("tower: sigma^(U n_t) is not the identity");
    sigma_pow_.pop_back();
    const auto theta_vec = basis_vec(1);
    for (int j = 1; j < d; ++j) {
      bool fixes_theta = true;
      for (int k = 0; k < d; ++k)
        if (!(sigma_pow_[static_cast<std::size_t>(j)](k, 1) == theta_vec[static_cast<std::size_t>(k)])) fixes_theta = false;
      if (fixes_theta) throw PreconditionError("tower: sigma does not generate a group of order U n_t");
    }
  }

  for (const auto& c : p_.f.coeffs())
    if (sgn(c.b()) != 0) throw PreconditionError("tower: f must have rational coefficients (theta is real)");
  theta_approx_ = p_.hint.approximate();
  const double delta = 1e-9 * std::max(1.0, std::fabs(theta_approx_));
  theta_seed_ = {BigRat(theta_approx_ - delta), BigRat(theta_approx_ + delta)};
  const int s_lo = sgn(eval_rational(p_.f, theta_seed_.lo));
  const int s_hi = sgn(eval_rational(p_.f, theta_seed_.hi));
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi)
    throw PreconditionError("tower: theta hint " + std::to_string(theta_approx_) + " does not isolate a real root of f");
  theta_approx_ = bisect(p_.f, theta_seed_, 80).mid().get_d();

  fast_ = FastRing::build(*this);
}

RatInterval Tower::theta_enclosure(int bits) const {
  std::lock_guard lock(cache_mu_);
  auto it = theta_cache_.lower_bound(bits);
  if (it != theta_cache_.end()) return it->second;
  RatInterval start = theta_seed_;
  if (it != theta_cache_.begin()) start = std::prev(it)->second;
  RatInterval r = bisect(p_.f, start, bits);
  theta_cache_.emplace(bits, r);
  return r;
}

RatInterval Tower::sqrt3_enclosure(int bits) const {
  std::lock_guard lock(cache_mu_);
  auto it = sqrt3_cache_.lower_bound(bits);
  if (it != sqrt3_cache_.end()) return it->second;
  static const Poly<QuadElem> x2m3{QuadElem(-3), QuadElem(0), QuadElem(1)};
  RatInterval start{BigRat(17320508, 10000000), BigRat(17320509, 10000000)};
  if (it != sqrt3_cache_.begin()) start = std::prev(it)->second;
  RatInterval r = bisect(x2m3, start, bits);
  sqrt3_cache_.emplace(bits, r);
  return r;
}

}  // namespace macdecay
