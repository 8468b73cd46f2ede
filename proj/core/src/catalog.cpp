#include "macdecay/catalog.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "macdecay/error.hpp"
#include "macdecay/ring_core.hpp"

namespace macdecay {

namespace {

using IntPoly = std::vector<BigInt>;  // ascending, not necessarily trimmed

void trim(IntPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Exact division of integer polynomials by a monic divisor; returns {q, r}.
std::pair<IntPoly, IntPoly> divmod_monic(IntPoly a, const IntPoly& d) {
  trim(a);
  const std::size_t dd = d.size() - 1;
  if (a.size() <= dd) return {{}, a};
  IntPoly q(a.size() - dd, BigInt(0));
  for (std::size_t i = a.size() - 1; i + 1 > dd; --i) {
    const BigInt c = a[i];
    if (sgn(c) != 0) {
      q[i - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) a[i - dd + j] -= c * d[j];
    }
    if (i == dd) break;
  }
  a.resize(dd);
  trim(a);
  return {q, a};
}

IntPoly cyclotomic(int n) {
  IntPoly p(static_cast<std::size_t>(n) + 1, BigInt(0));
  p[0] = -1;
  p.back() = 1;
  for (int k = 1; k < n; ++k)
    if (n % k == 0) p = divmod_monic(p, cyclotomic(k)).first;
  return p;
}

// Elements of Z[x]/(x^m - 1).
using Cyclo = std::vector<BigInt>;

Cyclo cmul(const Cyclo& x, const Cyclo& y) {
  const std::size_t m = x.size();
  Cyclo r(m, BigInt(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (sgn(y[j]) != 0) r[(i + j) % m] += x[i] * y[j];
  }
  return r;
}

Cyclo period(const PeriodSpec& ps, int coset) {
  Cyclo v(static_cast<std::size_t>(ps.m), BigInt(0));
  for (int h : ps.subgroup()) v[static_cast<std::size_t>((static_cast<long>(coset) * h) % ps.m)] += 1;
  return v;
}

// Coordinates in Z[zeta_m] = Z[x]/Phi_m, padded to phi(m) entries.
IntPoly reduce_cyclo(const Cyclo& v, const IntPoly& phi) {
  IntPoly r = divmod_monic(IntPoly(v), phi).second;
  r.resize(phi.size() - 1, BigInt(0));
  return r;
}

std::vector<int> coset_reps(const PeriodSpec& ps) {
  const auto h = ps.subgroup();
  std::set<int> seen;
  std::vector<int> reps;
  for (int u : ps.unit_group()) {
    if (seen.count(u)) continue;
    reps.push_back(u);
    for (int e : h) seen.insert(static_cast<int>((static_cast<long>(u) * e) % ps.m));
  }
  return reps;
}

bool is_prime_int(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::vector<int> PeriodSpec::subgroup() const {
  std::set<int> h{1};
  std::vector<int> frontier{1};
  while (!frontier.empty()) {
    const int a = frontier.back();
    frontier.pop_back();
    for (int g : subgroup_gens) {
      const int b = static_cast<int>((static_cast<long>(a) * (((g % m) + m) % m)) % m);
      if (h.insert(b).second) frontier.push_back(b);
    }
  }
  return {h.begin(), h.end()};
}

std::vector<int> PeriodSpec::unit_group() const {
  std::vector<int> u;
  for (int a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1) u.push_back(a);
  return u;
}

int PeriodSpec::degree() const {
  return static_cast<int>(unit_group().size() / subgroup().size());
}

void PeriodSpec::validate() const {
  if (m < 5 || m % 2 == 0) throw PreconditionError("period spec: conductor must be odd and >= 5");
  for (int g : subgroup_gens)
    if (std::gcd(((g % m) + m) % m, m) != 1) throw PreconditionError("period spec: generator not a unit mod m");
  const auto h = subgroup();
  if (std::find(h.begin(), h.end(), m - 1) == h.end()) throw PreconditionError("period spec: -1 not in H, periods are not real");
}

PeriodSpec PeriodSpec::for_degree(int m, int degree) {
  if (!is_prime_int(m)) throw PreconditionError("for_degree: conductor must be prime (pass H explicitly otherwise)");
  if (degree < 1 || (m - 1) % (2 * degree) != 0)
    throw PreconditionError("Q(zeta_" + std::to_string(m) + ")^+ has no subfield of degree " + std::to_string(degree));
  const int order = (m - 1) / degree;
  // H is cyclic of the given order; report its smallest generator.
  for (int h = 1; h < m; ++h) {
    PeriodSpec ps{m, {h}};
    if (static_cast<int>(ps.subgroup().size()) == order) {
      // the subgroup of a given order in a cyclic group is unique
      return ps;
    }
  }
  throw PreconditionError("for_degree: no subgroup found");
}

int smallest_prime_conductor(int degree) {
  if (degree < 1) throw PreconditionError("degree must be positive");
  for (int m = 5;; m += 2)
    if (is_prime_int(m) && (m - 1) % (2 * degree) == 0) return m;
}

Poly<BigInt> period_min_poly(const PeriodSpec& ps) {
  ps.validate();
  const std::size_t m = static_cast<std::size_t>(ps.m);
  // polynomial in X with coefficients in Z[x]/(x^m - 1)
  std::vector<Cyclo> acc{Cyclo(m, BigInt(0))};
  acc[0][0] = 1;
  for (int c : coset_reps(ps)) {
    const Cyclo eta = period(ps, c);
    std::vector<Cyclo> next(acc.size() + 1, Cyclo(m, BigInt(0)));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      const Cyclo t = cmul(acc[i], eta);
      for (std::size_t k = 0; k < m; ++k) {
        next[i + 1][k] += acc[i][k];
        next[i][k] -= t[k];
      }
    }
    acc = std::move(next);
  }
  const IntPoly phi = cyclotomic(ps.m);
  std::vector<BigInt> coeffs;
  for (const auto& c : acc) {
    IntPoly r = divmod_monic(IntPoly(c), phi).second;
    trim(r);
    if (r.size() > 1) throw PreconditionError("period_min_poly: non-rational coefficient (bad subgroup)");
    coeffs.push_back(r.empty() ? BigInt(0) : r[0]);
  }
  return Poly<BigInt>(std::move(coeffs));
}

int smallest_quotient_generator(const PeriodSpec& ps) {
  const auto h = ps.subgroup();
  const std::set<int> hs(h.begin(), h.end());
  const int d = ps.degree();
  for (int g : ps.unit_group()) {
    // order of g in G/H
    long cur = g;
    int order = 1;
    while (!hs.count(static_cast<int>(cur))) {
      cur = cur * g % ps.m;
      ++order;
    }
    if (order == d) return g;
  }
  throw PreconditionError("quotient (Z/m)*/H is not cyclic");
}

Poly<BigRat> sigma_image_poly(const PeriodSpec& ps, int g0) {
  ps.validate();
  const int d = ps.degree();
  const IntPoly phi = cyclotomic(ps.m);
  const std::size_t n = phi.size() - 1;
  const std::size_t m = static_cast<std::size_t>(ps.m);

  // Columns eta_1^j, j < d, and the target eta_{g0}, all in Z[zeta_m].
  std::vector<IntPoly> cols;
  Cyclo pw(m, BigInt(0));
  pw[0] = 1;
  const Cyclo eta = period(ps, 1);
  for (int j = 0; j < d; ++j) {
    cols.push_back(reduce_cyclo(pw, phi));
    pw = cmul(pw, eta);
  }
  const IntPoly target = reduce_cyclo(period(ps, ((g0 % ps.m) + ps.m) % ps.m), phi);

  // Row-reduce the augmented n x (d+1) system.
  std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(static_cast<std::size_t>(d) + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (int j = 0; j < d; ++j) a[r][static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j)][r];
    a[r][static_cast<std::size_t>(d)] = target[r];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_row(static_cast<std::size_t>(d));
  for (int col = 0; col < d; ++col) {
    std::size_t piv = row;
    while (piv < n && sgn(a[piv][static_cast<std::size_t>(col)]) == 0) ++piv;
    if (piv == n) throw PreconditionError("sigma_image_poly: eta_1 is not a primitive element");
    std::swap(a[piv], a[row]);
    const BigRat inv = BigRat(1) / a[row][static_cast<std::size_t>(col)];
    for (auto& v : a[row]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || sgn(a[r][static_cast<std::size_t>(col)]) == 0) continue;
      const BigRat f = a[r][static_cast<std::size_t>(col)];
      for (std::size_t c = 0; c <= static_cast<std::size_t>(d); ++c) a[r][c] -= f * a[row][c];
    }
    pivot_row[static_cast<std::size_t>(col)] = row;
    ++row;
  }
  for (std::size_t r = row; r < n; ++r)
    if (sgn(a[r][static_cast<std::size_t>(d)]) != 0) throw PreconditionError("sigma_image_poly: inconsistent system");
  std::vector<BigRat> g(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) g[static_cast<std::size_t>(j)] = a[pivot_row[static_cast<std::size_t>(j)]][static_cast<std::size_t>(d)];
  return Poly<BigRat>(std::move(g));
}

TowerPtr make_period_tower(const PeriodSpec& ps, RingTag field, int users, int antennas, int precision_bits) {
  ps.validate();
  if (ps.degree() != users * antennas)
    throw PreconditionError("period field has degree " + std::to_string(ps.degree()) + ", code needs U*n_t = " +
                            std::to_string(users * antennas));
  TowerParams p;
  p.field = field;
  p.f = to_quad_poly(period_min_poly(ps), field);
  p.sigma_image = ps.degree() >= 2 ? sigma_image_poly(ps, smallest_quotient_generator(ps)) : Poly<BigRat>{BigRat(0), BigRat(1)};
  p.users = users;
  p.antennas = antennas;
  p.hint.m = ps.m;
  p.hint.subgroup_gens = ps.subgroup_gens;
  p.hint.coset = 1;
  p.precision_bits = precision_bits;
  return Tower::create(std::move(p));
}

std::vector<QuadElem> ok_primes_up_to(RingTag field, long norm_bound) {
  std::vector<QuadElem> out;
  long lim = 1;
  while (lim * lim <= norm_bound) ++lim;
  for (long a = 1; a <= lim; ++a)
    for (long b = 0; b <= lim; ++b) {
      QuadElem q(BigRat(a), BigRat(b), field);
      if (q.norm() > norm_bound) continue;
      if (is_ok_prime(q)) out.push_back(q);
    }
  std::sort(out.begin(), out.end(), [](const QuadElem& x, const QuadElem& y) {
    if (x.norm() != y.norm()) return x.norm() < y.norm();
    if (x.a() != y.a()) return x.a() < y.a();
    return x.b() < y.b();
  });
  return out;
}

std::vector<QuadElem> find_inert_primes(const Tower& tower, long norm_bound) {
  std::vector<QuadElem> out;
  if (norm_bound < 2) return out;
  for (const auto& p : ok_primes_up_to(tower.field(), norm_bound)) {
    if (tower.degree() >= 2 && ok_valuation(tower.discriminant(), p) != 0) continue;
    if (is_irreducible_mod_p(tower.f(), p)) out.push_back(p);
  }
  return out;
}

std::vector<CatalogRow> catalog_rows(int max_degree, long norm_bound) {
  std::vector<CatalogRow> rows;
  for (int d = 2; d <= max_degree; ++d) {
    CatalogRow row;
    row.degree = d;
    row.spec = PeriodSpec::for_degree(smallest_prime_conductor(d), d);
    row.f = period_min_poly(row.spec);
    for (RingTag tag : {RingTag::Gaussian, RingTag::Eisenstein}) {
      auto tower = make_period_tower(row.spec, tag, d, 1);
      auto primes = find_inert_primes(*tower, norm_bound);
      (tag == RingTag::Gaussian ? row.gaussian_primes : row.eisenstein_primes) = std::move(primes);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace macdecay
