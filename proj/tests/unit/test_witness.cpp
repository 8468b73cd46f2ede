#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "macdecay/witness.hpp"

using namespace macdecay;
using namespace macdecay::testing;

namespace {

const TowerPtr& quad_tower() { return c21().tower(); }

void expect_witness(const FieldElem& a, const FieldElem& b, const FieldElem& c, const FieldElem& d) {
  const auto w = zero_det_witness_2user(a, b, c, d);
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(w->first.is_zero());
  EXPECT_FALSE(w->second.is_zero());
  EXPECT_TRUE(w->first.is_integral());
  EXPECT_TRUE(w->second.is_integral());
  EXPECT_TRUE(two_user_det(a, b, c, d, w->first, w->second).is_zero());
}

}  // namespace

TEST(Witness, AllOnes) {
  const auto& t = quad_tower();
  const FieldElem one = FieldElem::one(t);
  EXPECT_TRUE(two_user_singularity_test(one, one, one, one));
  expect_witness(one, one, one, one);
  EXPECT_TRUE(two_user_det(one, one, one, one, one, one).is_zero());
}

TEST(Witness, NormTestFails) {
  const auto& t = quad_tower();
  const FieldElem one = FieldElem::one(t);
  const FieldElem u = FieldElem::theta(t) + one;
  EXPECT_EQ(rel_norm(u, NormLevel::LOverK), -one);
  EXPECT_EQ(two_user_norm_det(one, one, one, u), QuadElem(-2));
  EXPECT_FALSE(zero_det_witness_2user(one, one, one, u).has_value());
}

TEST(Witness, UnitOfNormOne) {
  // theta + 1 has norm -1, so its square has norm 1 and pairs with a = b = c = 1
  const auto& t = quad_tower();
  const FieldElem one = FieldElem::one(t);
  const FieldElem u = FieldElem::theta(t) + one;
  expect_witness(one, one, one, u * u);
  expect_witness(one, u, u, one);
}

TEST(Witness, DegenerateEntries) {
  const auto& t = quad_tower();
  const FieldElem one = FieldElem::one(t), zero = FieldElem::zero(t);
  expect_witness(zero, zero, one, one);
  expect_witness(one, one, zero, zero);
  EXPECT_FALSE(zero_det_witness_2user(one, zero, one, one).has_value());
}

TEST(Witness, NeedsQuadraticExtension) {
  const auto& t = c31().tower();
  const FieldElem one = FieldElem::one(t);
  EXPECT_THROW(zero_det_witness_2user(one, one, one, one), PreconditionError);
}

TEST(Witness, RandomizedHilbert90) {
  std::mt19937_64 rng(41);
  for (const RingTag field : {RingTag::Gaussian, RingTag::Eisenstein}) {
    const TowerPtr t = period_tower(field == RingTag::Gaussian ? 5 : 13, field, 2, 1);
    for (int i = 0; i < 60; ++i) {
      const FieldElem a = random_nonzero(t, rng, 3), b = random_nonzero(t, rng, 3), c = random_nonzero(t, rng, 3);
      const FieldElem z = random_nonzero(t, rng, 3);
      const FieldElem d = b * c * apply_sigma(z, 1) * (a * z).inverse();
      EXPECT_TRUE(two_user_singularity_test(a, b, c, d));
      expect_witness(a, b, c, d);
      // a generic perturbation breaks the norm condition
      const FieldElem d2 = d + FieldElem::one(t);
      EXPECT_EQ(two_user_singularity_test(a, b, c, d2), zero_det_witness_2user(a, b, c, d2).has_value());
    }
  }
}
