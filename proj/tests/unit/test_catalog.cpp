#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fixtures.hpp"
#include "macdecay/ring_core.hpp"

using namespace macdecay;
using namespace macdecay::testing;

namespace {

std::vector<long> coeffs(const Poly<BigInt>& f) {
  std::vector<long> out;
  for (const auto& c : f.coeffs()) out.push_back(c.get_si());
  return out;
}

std::vector<long> rat_coeffs(const Poly<BigRat>& g) {
  std::vector<long> out;
  for (const auto& c : g.coeffs()) {
    EXPECT_EQ(c.get_den(), 1);
    out.push_back(c.get_num().get_si());
  }
  return out;
}

bool contains_associate(const std::vector<QuadElem>& list, const QuadElem& p) {
  const QuadElem c = canonical_associate(p);
  return std::find(list.begin(), list.end(), c) != list.end();
}

}  // namespace

// Minimal polynomials from an independent mpmath computation of the periods
// (tests/oracles/period_polys.py), rounded to integers.
TEST(PeriodPoly, FrozenOracleValues) {
  struct Row {
    int m, degree;
    std::vector<int> h;
    std::vector<long> f;
    long disc;
    double theta;
  };
  const std::vector<Row> rows{
      {5, 2, {4}, {-1, 1, 1}, 5, 0.6180339887498948482},
      {7, 3, {6}, {-1, -2, 1, 1}, 49, 1.24697960371746706105},
      {17, 4, {4}, {1, -1, -6, 1, 1}, 19652, 2.0494811777353155996},
      {11, 5, {10}, {1, 3, -3, -4, 1, 1}, 14641, 1.6825070656623623377},
      {13, 6, {12}, {-1, 3, 6, -4, -5, 1, 1}, 371293, 1.7709120513064197918},
      {29, 7, {12}, {1, -9, 14, 28, -7, -12, 1, 1}, 171903939769, 0.2395267590849948774},
  };
  for (const auto& r : rows) {
    const PeriodSpec ps = PeriodSpec::for_degree(r.m, r.degree);
    EXPECT_EQ(ps.subgroup_gens, r.h) << r.m;
    const auto f = period_min_poly(ps);
    EXPECT_EQ(coeffs(f), r.f) << r.m;
    EXPECT_EQ(poly_discriminant(to_quad_poly(f, RingTag::Gaussian)), QuadElem(r.disc)) << r.m;
    const auto t = make_period_tower(ps, RingTag::Gaussian, r.degree, 1);
    EXPECT_NEAR(t->theta_approx(), r.theta, 1e-15 * std::max(1.0, r.theta)) << r.m;
  }
}

TEST(PeriodPoly, Examples) {
  EXPECT_EQ(coeffs(period_min_poly({5, {4}})), (std::vector<long>{-1, 1, 1}));
  EXPECT_EQ(coeffs(period_min_poly({7, {6}})), (std::vector<long>{-1, -2, 1, 1}));
  // full unit group: the single period is -1
  EXPECT_EQ(coeffs(period_min_poly({7, {3}})), (std::vector<long>{1, 1}));
}

TEST(PeriodPoly, RejectsBadSubgroups) {
  EXPECT_THROW(period_min_poly({7, {2}}), PreconditionError);  // -1 not in {1,2,4}
  EXPECT_THROW(PeriodSpec::for_degree(7, 2), PreconditionError);
  EXPECT_THROW(PeriodSpec::for_degree(13, 4), PreconditionError);  // subgroup of order 3 misses -1
  EXPECT_THROW(period_min_poly({4, {3}}), PreconditionError);
}

TEST(PeriodPoly, SmallestConductors) {
  const std::vector<int> expect{5, 7, 17, 11, 13, 29};
  for (int d = 2; d <= 7; ++d) EXPECT_EQ(smallest_prime_conductor(d), expect[static_cast<std::size_t>(d - 2)]);
}

TEST(PeriodPoly, SubgroupStructure) {
  const PeriodSpec ps = PeriodSpec::for_degree(29, 7);
  auto h = ps.subgroup();
  std::sort(h.begin(), h.end());
  EXPECT_EQ(h, (std::vector<int>{1, 12, 17, 28}));
  EXPECT_EQ(ps.degree(), 7);
  EXPECT_EQ(ps.unit_group().size(), 28u);
}

TEST(SigmaImage, Examples) {
  // zeta^2 + zeta^-2 = theta^2 - 2 = -theta - 1 mod f
  EXPECT_EQ(rat_coeffs(sigma_image_poly({5, {4}}, 2)), (std::vector<long>{-1, -1}));
  // zeta^3 + zeta^-3 = theta^3 - 3 theta = -theta^2 - theta + 1 mod f
  EXPECT_EQ(rat_coeffs(sigma_image_poly({7, {6}}, 3)), (std::vector<long>{1, -1, -1}));
  EXPECT_EQ(rat_coeffs(sigma_image_poly({7, {6}}, 1)), (std::vector<long>{0, 1}));
  EXPECT_EQ(smallest_quotient_generator({5, {4}}), 2);
  EXPECT_EQ(smallest_quotient_generator({7, {6}}), 2);
  EXPECT_EQ(smallest_quotient_generator({17, {4}}), 3);
}

TEST(SigmaImage, NumericCheck) {
  const auto g = sigma_image_poly({7, {6}}, 3);
  const double th = 2 * std::cos(2 * M_PI / 7);
  double v = 0;
  for (int i = g.degree(); i >= 0; --i) v = v * th + g[i].get_d();
  EXPECT_NEAR(v, 2 * std::cos(6 * M_PI / 7), 1e-12);
}

TEST(SigmaImage, OrbitProductIsF) {
  for (int d = 2; d <= 7; ++d) {
    const int m = smallest_prime_conductor(d);
    const auto t = make_period_tower(PeriodSpec::for_degree(m, d), d % 2 ? RingTag::Eisenstein : RingTag::Gaussian, d, 1);
    // prod_j (x - sigma^j theta) expanded in L[x]
    std::vector<FieldElem> prod{FieldElem::one(t)};
    for (int j = 0; j < d; ++j) {
      const FieldElem r = apply_sigma(FieldElem::theta(t), j);
      std::vector<FieldElem> next(prod.size() + 1, FieldElem::zero(t));
      for (std::size_t i = 0; i < prod.size(); ++i) {
        next[i + 1] += prod[i];
        next[i] -= prod[i] * r;
      }
      prod = std::move(next);
    }
    ASSERT_EQ(static_cast<int>(prod.size()), d + 1);
    for (int i = 0; i <= d; ++i) EXPECT_EQ(prod[static_cast<std::size_t>(i)], FieldElem::scalar(t, t->f()[i])) << "m=" << m;
    std::vector<FieldElem> orbit;
    for (int j = 0; j < d; ++j) orbit.push_back(apply_sigma(FieldElem::theta(t), j));
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) EXPECT_NE(orbit[static_cast<std::size_t>(a)], orbit[static_cast<std::size_t>(b)]);
  }
}

TEST(OkPrimes, EnumerationMatchesBruteForce) {
  for (RingTag tag : {RingTag::Gaussian, RingTag::Eisenstein}) {
    const long bound = 60;
    const auto primes = ok_primes_up_to(tag, bound);
    std::vector<QuadElem> brute;
    for (long a = -20; a <= 20; ++a)
      for (long b = -20; b <= 20; ++b) {
        const QuadElem x(BigRat(a), BigRat(b), tag);
        if (x.norm() > bound || x.norm() < 2 || !is_ok_prime(x)) continue;
        const QuadElem c = canonical_associate(x);
        if (std::find(brute.begin(), brute.end(), c) == brute.end()) brute.push_back(c);
      }
    EXPECT_EQ(primes.size(), brute.size());
    for (const auto& p : primes) {
      EXPECT_EQ(p, canonical_associate(p));
      EXPECT_TRUE(contains_associate(brute, p)) << p;
    }
    for (std::size_t i = 1; i < primes.size(); ++i) EXPECT_LE(primes[i - 1].norm(), primes[i].norm());
  }
}

TEST(InertPrimes, Examples) {
  const auto t7i = period_tower(7, RingTag::Gaussian, 3, 1);
  EXPECT_TRUE(contains_associate(find_inert_primes(*t7i, 10), gi(2, 1)));
  const auto t7e = period_tower(7, RingTag::Eisenstein, 3, 1);
  EXPECT_TRUE(contains_associate(find_inert_primes(*t7e, 10), ew(-1, 2)));
  const auto t5 = period_tower(5, RingTag::Gaussian, 2, 1);
  const auto p5 = find_inert_primes(*t5, 10);
  ASSERT_FALSE(p5.empty());
  EXPECT_EQ(p5.front(), gi(1, 1));
  // 2+i divides disc = 5 and is excluded
  EXPECT_FALSE(contains_associate(p5, gi(2, 1)));
}

TEST(InertPrimes, QuadraticFieldsAgreeWithRootSearch) {
  // For degree 2, inert iff f has no root mod p.
  const auto t = period_tower(5, RingTag::Gaussian, 2, 1);
  const auto inert = find_inert_primes(*t, 200);
  for (const auto& p : ok_primes_up_to(RingTag::Gaussian, 200)) {
    if (ok_valuation(QuadElem(5), p) > 0) continue;
    const FqField k(p);
    const FqPolyRing ring(k);
    const FqPoly f = reduce_poly(k, t->f());
    bool root = false;
    for (std::uint64_t e = 0; e < k.order(); ++e)
      if (k.is_zero(ring.eval(f, k.element(e)))) root = true;
    EXPECT_EQ(contains_associate(inert, p), !root) << p;
  }
}

namespace {

// O_K[theta]/(p, f) by brute force: every nonzero residue must be invertible.
void expect_residue_field(const Tower& t, const QuadElem& p, std::uint64_t expected_order) {
  const FqField k(p);
  const FqPolyRing ring(k);
  const FqPoly f = reduce_poly(k, t.f());
  const int d = t.degree();
  std::uint64_t order = 1;
  for (int i = 0; i < d; ++i) order *= k.order();
  EXPECT_EQ(order, expected_order);
  auto make = [&](std::uint64_t idx) {
    FqPoly e(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      e[static_cast<std::size_t>(i)] = k.element(idx % k.order());
      idx /= k.order();
    }
    return ring.trim(e);
  };
  const FqPoly one = ring.trim({k.from_int(1)});
  for (std::uint64_t a = 1; a < order; ++a) {
    const FqPoly x = make(a);
    bool has_inverse = false;
    for (std::uint64_t b = 1; b < order && !has_inverse; ++b)
      if (ring.mod(ring.mul(x, make(b)), f) == one) has_inverse = true;
    EXPECT_TRUE(has_inverse) << "element " << a << " of " << expected_order;
  }
}

}  // namespace

TEST(InertPrimes, ResidueRingIsAField) {
  expect_residue_field(*period_tower(5, RingTag::Gaussian, 2, 1), gi(1, 1), 4);
  expect_residue_field(*period_tower(7, RingTag::Gaussian, 3, 1), gi(2, 1), 125);
  expect_residue_field(*period_tower(5, RingTag::Eisenstein, 2, 1), ew(-1, 2), 9);
  // x^2 + x + 1 splits over F_4, so 2 is not inert here
  EXPECT_FALSE(is_irreducible_mod_p(period_tower(5, RingTag::Eisenstein, 2, 1)->f(), ew(2, 0)));
}

TEST(Catalog, TableOneRows) {
  const auto start = std::chrono::steady_clock::now();
  struct Listed {
    int degree;
    QuadElem pi, pw;
  };
  const QuadElem sqrt_m3 = ew(-1, 2);
  const std::vector<Listed> table{{3, gi(2, 1), sqrt_m3},
                                  {4, gi(2, 1), sqrt_m3},
                                  {5, gi(1, 1), ew(2, 0) + sqrt_m3},
                                  {6, gi(1, 1), ew(2, 0) + sqrt_m3},
                                  {7, gi(1, 1), sqrt_m3}};
  const auto rows = catalog_rows(7, 10);
  ASSERT_EQ(rows.size(), 6u);
  int hits = 0;
  for (const auto& l : table) {
    const auto& row = rows[static_cast<std::size_t>(l.degree - 2)];
    ASSERT_EQ(row.degree, l.degree);
    hits += contains_associate(row.gaussian_primes, l.pi);
    hits += contains_associate(row.eisenstein_primes, l.pw);
  }
  EXPECT_EQ(hits, 10);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 5.0);
  EXPECT_TRUE(catalog_rows(1, 10).empty());
  const auto two = catalog_rows(2, 10);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].spec.m, 5);
  EXPECT_EQ(two[0].gaussian_primes.front(), gi(1, 1));
}
