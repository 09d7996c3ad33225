#include "vilenkin/stepfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vilenkin/errors.hpp"
#include "vilenkin/vc_system.hpp"

namespace vilenkin {
namespace {

CycloValue one(unsigned p) { return CycloValue::constant(p, Rational(1)); }

StepFn random_fn(unsigned p, unsigned rank, std::mt19937_64& rng) {
  std::vector<CycloValue> v;
  for (Index c = 0; c < cell_count(p, rank); ++c) {
    std::vector<Rational> coeffs(p);
    for (auto& x : coeffs) x = Rational(static_cast<std::int64_t>(rng() % 7) - 3);
    v.emplace_back(p, std::move(coeffs));
  }
  return StepFn(p, rank, std::move(v));
}

std::vector<int> as_ints(const StepFn& f) {
  std::vector<int> out;
  for (const auto& v : f.values()) {
    const auto r = v.as_rational();
    EXPECT_TRUE(r.has_value());
    out.push_back(static_cast<int>(r->to_double()));
  }
  return out;
}

TEST(StepFn, RefineExamples) {
  EXPECT_EQ(as_ints(StepFn::constant(3, Rational(1)).refine(2)), std::vector<int>(9, 1));
  EXPECT_EQ(as_ints(rademacher(2, 0).refine(2)), (std::vector<int>{1, 1, -1, -1}));
  EXPECT_THROW(rademacher(2, 1).refine(1), DomainError);
}

TEST(StepFn, ArithmeticExamples) {
  const StepFn r0 = rademacher(2, 0);
  EXPECT_EQ(as_ints(r0 + r0.conj()), (std::vector<int>{2, -2}));
  const StepFn scaled = StepFn::indicator(PArySet::full(5)) * CycloValue::root(5, 1);
  EXPECT_TRUE(equal_functions(scaled, StepFn::constant(CycloValue::root(5, 1))));
  EXPECT_THROW(rademacher(2, 0) + rademacher(3, 0), BaseMismatch);
}

TEST(StepFn, IntegralAndInnerProduct) {
  const StepFn r = rademacher(3, 1);
  EXPECT_TRUE(integral(r).is_zero());
  EXPECT_TRUE(equal_values(inner_product(r, r), one(3)));
  EXPECT_TRUE(inner_product(r, rademacher(3, 0)).is_zero());
  const StepFn ind = StepFn::indicator(PArySet::half_open(3, Rational(1, 9), Rational(2, 3)));
  EXPECT_EQ(integral(ind).as_rational(), Rational(5, 9));
}

TEST(StepFn, LevelSetExamples) {
  const StepFn f = -rademacher(3, 0) + one(3);
  EXPECT_EQ(zero_set(f), PArySet::half_open(3, Rational(0), Rational(1, 3)));
  EXPECT_EQ(zero_set(f).measure(), Rational(1, 3));

  StepFn q = StepFn::constant(3, Rational(1));
  for (unsigned k = 0; k < 2; ++k) {
    const StepFn r = rademacher(3, k);
    q = q * (r.pow(2) + r + one(3));
  }
  EXPECT_EQ(zero_set(q).measure(), Rational(8, 9));

  const StepFn w = StepFn::constant(CycloValue::root(4, 1));
  EXPECT_EQ(level_set(w, CycloValue::root(4, 1)), PArySet::full(4));
}

TEST(StepFn, LevelSetsPartitionUnitInterval) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const unsigned p = 2 + rng() % 5;
    const StepFn f = t % 2 ? random_fn(p, 2, rng) : rademacher(p, 0) + rademacher(p, 1).pow(rng() % p);
    Rational total(0);
    const Distribution dist = distribution(f);
    for (const auto& atom : dist.atoms()) {
      total += atom.measure;
      ASSERT_EQ(level_set(f, atom.value).measure(), atom.measure);
    }
    ASSERT_EQ(total, Rational(1));
  }
}

TEST(StepFn, DistributionExamples) {
  const auto d2 = distribution(real_part(rademacher(2, 0)));
  EXPECT_EQ(d2.atoms().size(), 2u);
  EXPECT_EQ(d2.measure_of(one(2)), Rational(1, 2));
  EXPECT_EQ(d2.measure_of(CycloValue::constant(2, Rational(-1))), Rational(1, 2));
  EXPECT_TRUE(d2.is_symmetric());

  const auto d3 = distribution(real_part(rademacher(3, 0)));
  EXPECT_EQ(d3.measure_of(one(3)), Rational(1, 3));
  EXPECT_EQ(d3.measure_of(CycloValue::constant(3, Rational(-1, 2))), Rational(2, 3));
  EXPECT_FALSE(d3.is_symmetric());

  // i Im R_0 for p = 3 takes 0 and +- i sqrt(3)/2, each with measure 1/3.
  const auto di = distribution(imaginary_part_times_i(rademacher(3, 0)));
  EXPECT_EQ(di.atoms().size(), 3u);
  for (const auto& atom : di.atoms()) EXPECT_EQ(atom.measure, Rational(1, 3));
  EXPECT_TRUE(di.is_symmetric());
  const auto half_i_sqrt3 = (CycloValue::root(3, 1) - CycloValue::root(3, 2)) * Rational(1, 2);
  EXPECT_EQ(di.measure_of(half_i_sqrt3), Rational(1, 3));
}

TEST(StepFn, EvenNormsAgreeWithFloatPath) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const unsigned p = 2 + rng() % 4;
    const StepFn f = random_fn(p, 1 + rng() % 2, rng);
    for (unsigned q : {2u, 4u, 6u}) {
      const CycloValue exact = lq_norm_power(f, q);
      ASSERT_TRUE(exact.is_real());
      const auto z = exact.eval();
      const ApproxReal approx = lq_norm(f, q);
      const double from_exact = std::pow(z.re, 1.0 / q);
      ASSERT_NEAR(approx.value, from_exact, approx.err + 1e-9 * from_exact);
    }
  }
}

TEST(StepFn, EvenNormExamples) {
  // r_0 + r_1 takes (2, 0, 0, -2): the fourth power integrates to 8.
  const StepFn f = rademacher(2, 0) + rademacher(2, 1);
  EXPECT_EQ(lq_norm_power_rational(f, 4), Rational(8));
  EXPECT_EQ(lq_norm_power_rational(f, 2), Rational(2));
  EXPECT_THROW(lq_norm_power(f, 3), DomainError);
  // 1 + cos(2 pi / 5) has an irrational square norm.
  const StepFn g = StepFn::constant(real_part(StepFn::constant(CycloValue::root(5, 1))).value(0) + one(5));
  EXPECT_THROW(lq_norm_power_rational(g, 2), DomainError);
  EXPECT_NEAR(lq_norm(f, 1).value, 1.0, 1e-12);
}

TEST(StepFn, ParsevalForCoefficientVectors) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    const unsigned p = 2 + rng() % 4;
    ExactCoeffs c;
    c.p = p;
    Rational energy(0);
    for (int i = 0; i < 5; ++i) {
      const Index n = rng() % cell_count(p, 3);
      const Rational v(static_cast<std::int64_t>(rng() % 9) - 4, 1 + rng() % 3);
      if (c.coeffs.count(n)) continue;
      c.coeffs.emplace(n, CycloValue::constant(p, v));
      energy += v * v;
    }
    ASSERT_EQ(lq_norm_power_rational(synthesize(c), 2), energy);
  }
}

TEST(StepFn, ValueAtPoint) {
  const StepFn r = rademacher(3, 1);
  EXPECT_TRUE(equal_values(r.value_at(Rational(4, 9)), CycloValue::root(3, 1)));
  EXPECT_THROW(r.value_at(Rational(1)), DomainError);
}

}  // namespace
}  // namespace vilenkin
