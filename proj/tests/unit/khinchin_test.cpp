#include "vilenkin/khinchin.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "vilenkin/errors.hpp"

namespace vilenkin {
namespace {

using cd = std::complex<double>;

FloatCoeffs unit_on(unsigned p, std::vector<Index> support, std::vector<cd> values) {
  FloatCoeffs c{p, {}};
  for (std::size_t i = 0; i < support.size(); ++i) c.coeffs.emplace(support[i], values[i]);
  return c;
}

// Integral of |f|^4 by cell enumeration in exact arithmetic.
Rational fourth_by_cells(const ExactCoeffs& c) { return lq_norm_power_rational(synthesize(c), 4); }

TEST(NormRatio, Examples) {
  const auto v = IndexSpec::v(2, 1);
  EXPECT_NEAR(norm_ratio(v, unit_on(2, {4}, {1.0}), 4.0).value, 1.0, 1e-12);
  EXPECT_NEAR(norm_ratio(v, unit_on(2, {4}, {cd(0.6, 0.8)}), 7.0).value, 1.0, 1e-12);
  const NormRatio r = norm_ratio(v, unit_on(2, {1, 2}, {1.0, 1.0}), 4.0);
  EXPECT_NEAR(r.value, std::pow(2.0, 0.25), 1e-12);
  EXPECT_LE(std::abs(r.value - std::pow(2.0, 0.25)), r.err + 1e-15);
  ASSERT_TRUE(r.exact_power.has_value());
  EXPECT_EQ(*r.exact_power, Rational(2));  // 8 / 2^2
  const NormRatio two = norm_ratio(IndexSpec::vtilde(3, 2), unit_on(3, {1, 5, 7}, {cd(1, 2), -3.0, cd(0, 1)}), 2.0);
  EXPECT_EQ(*two.exact_power, Rational(1));
  EXPECT_NEAR(two.value, 1.0, 1e-12);
  EXPECT_THROW(norm_ratio(v, unit_on(2, {3}, {1.0}), 4.0), DomainError);  // 3 is outside V(2,1)
  EXPECT_THROW(norm_ratio(v, unit_on(2, {1}, {0.0}), 4.0), DomainError);
}

TEST(NormRatio, L1Examples) {
  const auto v = IndexSpec::v(2, 1);
  EXPECT_NEAR(l1_lower_ratio(v, unit_on(2, {1, 2}, {1.0, 1.0})).value, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(l1_lower_ratio(v, unit_on(2, {8}, {1.0})).value, 1.0, 1e-12);
}

TEST(NormRatio, ScaleInvariance) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const auto spec = IndexSpec::vtilde(3, 2);
  const auto members = enumerate(spec, 80);
  for (int t = 0; t < 50; ++t) {
    FloatCoeffs c{3, {}};
    for (Index n : members) c.coeffs.emplace(n, cd(g(rng), g(rng)));
    FloatCoeffs scaled = c;
    const cd lambda(g(rng) * 5, g(rng) * 5);
    for (auto& [n, v] : scaled.coeffs) v *= lambda;
    for (double q : {3.0, 4.0}) {
      EXPECT_NEAR(norm_ratio(spec, c, q).value, norm_ratio(spec, scaled, q).value, 1e-12);
    }
  }
}

TEST(FourthMoment, Examples) {
  GaussCoeffs c{2, {}};
  c.coeffs.emplace(1, GaussRational{1, 0});
  c.coeffs.emplace(2, GaussRational{1, 0});
  EXPECT_EQ(fourth_moment_exact(c), Rational(8));

  GaussCoeffs single{5, {}};
  single.coeffs.emplace(17, GaussRational{Rational(3, 2), Rational(-2)});
  EXPECT_EQ(fourth_moment_exact(single), (Rational(9, 4) + Rational(4)).pow(2));
}

TEST(FourthMoment, EqualRademacherCoefficients) {
  for (unsigned n = 1; n <= 12; ++n) {
    GaussCoeffs c{2, {}};
    ExactCoeffs e{2, {}};
    for (unsigned k = 0; k < n; ++k) {
      c.coeffs.emplace(Index{1} << k, GaussRational{1, 0});
      e.coeffs.emplace(Index{1} << k, CycloValue::constant(2, Rational(1)));
    }
    const Rational expected(3 * n * n - 2 * n);
    EXPECT_EQ(fourth_moment_exact(c), expected) << n;
    if (n <= 10) EXPECT_EQ(fourth_by_cells(e), expected) << n;
  }
}

TEST(FourthMoment, AgreesWithCellEnumeration) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const unsigned p = 2 + rng() % 4;
    const unsigned d = 1 + rng() % 3;
    const auto spec = t % 2 ? IndexSpec::v(p, d) : IndexSpec::vtilde(p, d);
    const auto members = enumerate(spec, cell_count(p, 1 + rng() % 4) - 1);
    ExactCoeffs e{p, {}};
    GaussCoeffs g{p, {}};
    for (Index n : members) {
      if (rng() % 3 == 0) continue;
      const Rational v(static_cast<std::int64_t>(rng() % 11) - 5, 1 + rng() % 4);
      e.coeffs.emplace(n, CycloValue::constant(p, v));
      g.coeffs.emplace(n, GaussRational{v, 0});
    }
    const Rational by_cells = fourth_by_cells(e);
    ASSERT_EQ(fourth_moment_exact_rational(e), by_cells);
    ASSERT_EQ(fourth_moment_exact(g), by_cells);
  }
}

TEST(FourthMoment, ComplexCoefficientsForBaseFour) {
  // For p = 4, omega = i, so Gaussian rationals embed exactly.
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    ExactCoeffs e{4, {}};
    GaussCoeffs g{4, {}};
    for (Index n : enumerate(IndexSpec::vtilde(4, 2), 63)) {
      const Rational re(static_cast<std::int64_t>(rng() % 7) - 3), im(static_cast<std::int64_t>(rng() % 7) - 3);
      e.coeffs.emplace(n, CycloValue(4, {re, im, 0, 0}));
      g.coeffs.emplace(n, GaussRational{re, im});
    }
    ASSERT_EQ(fourth_moment_exact(g), fourth_by_cells(e));
    ASSERT_EQ(even_moment_exact(g, 6), lq_norm_power_rational(synthesize(e), 6));
  }
}

TEST(FourthMoment, IrrationalValuesStayExact) {
  ExactCoeffs e{5, {}};
  e.coeffs.emplace(1, CycloValue::constant(5, Rational(1)));
  e.coeffs.emplace(5, (CycloValue::root(5, 1) + CycloValue::root(5, 4)) * Rational(1, 2));
  const CycloValue m4 = fourth_moment_exact(e);
  EXPECT_TRUE(m4.is_real());
  EXPECT_TRUE(equal_values(m4, lq_norm_power(synthesize(e), 4)));
  EXPECT_THROW(fourth_moment_exact_rational(e), DomainError);
}

TEST(RealRademacherCeiling, EverySampleAtMostThree) {
  const auto members = enumerate(IndexSpec::v(2, 1), 1024);
  for (std::uint64_t t = 0; t < 300; ++t) {
    const FloatCoeffs c = random_unit_coefficients(2, members, 11, t);
    // Real parts only: the classical identity 3 (sum c^2)^2 - 2 sum c^4.
    GaussCoeffs real{2, {}};
    Rational s2, s4;
    for (const auto& [n, v] : c.coeffs) {
      const Rational x = Rational::from_double(v.real());
      real.coeffs.emplace(n, GaussRational{x, 0});
      s2 += x * x;
      s4 += x * x * x * x;
    }
    const Rational m4 = fourth_moment_exact(real);
    ASSERT_EQ(m4, Rational(3) * s2 * s2 - Rational(2) * s4);
    ASSERT_LE(m4, Rational(3) * s2 * s2);
    // Complex coefficients obey the same ceiling.
    const GaussCoeffs z = to_exact(c);
    const Rational n2 = l2_norm_squared(z);
    ASSERT_LE(fourth_moment_exact(z), Rational(3) * n2 * n2);
  }
}

TEST(RandomCoefficients, ReproducibleAndNormalized) {
  const std::vector<Index> support = {1, 2, 4, 8};
  const auto a = random_unit_coefficients(2, support, 42, 7);
  const auto b = random_unit_coefficients(2, support, 42, 7);
  const auto c = random_unit_coefficients(2, support, 42, 8);
  EXPECT_EQ(a.coeffs, b.coeffs);
  EXPECT_NE(a.coeffs, c.coeffs);
  EXPECT_NEAR(l2_norm_squared(a), 1.0, 1e-14);
}

TEST(Estimate, SingleTrialAtLeastOne) {
  const auto r = estimate_constant(IndexSpec::vtilde(3, 2), 4.0, 26, 1, 5, Optimizer::kRandom);
  EXPECT_GE(r.best_ratio, 1.0);
  EXPECT_EQ(r.dimension, 18u);
  ASSERT_TRUE(r.best_exact_power.has_value());
  EXPECT_GE(*r.best_exact_power, Rational(1));
  EXPECT_THROW(estimate_constant(IndexSpec::v(2, 1), 2.0, 16, 10, 1, Optimizer::kRandom), DomainError);
}

TEST(Estimate, MonotoneInTrials) {
  const auto spec = IndexSpec::v(3, 2);
  double prev = 0.0;
  for (std::uint64_t trials : {1u, 5u, 20u, 80u}) {
    const auto r = estimate_constant(spec, 4.0, 80, trials, 9, Optimizer::kAscent);
    EXPECT_GE(r.best_ratio, prev);
    prev = r.best_ratio;
  }
  const auto a = estimate_constant(spec, 4.0, 80, 20, 9, Optimizer::kAscent);
  const auto b = estimate_constant(spec, 4.0, 80, 20, 9, Optimizer::kAscent);
  EXPECT_EQ(a.best_ratio, b.best_ratio);
  EXPECT_EQ(a.best_coefficients.coeffs, b.best_coefficients.coeffs);
}

TEST(Estimate, ReportedCoefficientsReproduceRatio) {
  const auto spec = IndexSpec::vtilde(2, 2);
  const auto r = estimate_constant(spec, 4.0, 64, 30, 3, Optimizer::kAscent);
  const NormRatio check = norm_ratio(spec, r.best_coefficients, 4.0);
  EXPECT_NEAR(check.value, r.best_ratio, 1e-12);
  EXPECT_EQ(*check.exact_power, *r.best_exact_power);
  // Degree-2 chaos: ratio^4 may exceed 3 but stays below the hypercontractive 9^2.
  EXPECT_GT(*r.best_exact_power, Rational(3));
  EXPECT_LE(*r.best_exact_power, Rational(81));
}

TEST(Estimate, L1FloorForRademacherSums) {
  const double worst = estimate_l1_constant(IndexSpec::v(2, 1), 256, 200, 1);
  EXPECT_GE(worst, 1.0 / std::sqrt(3.0) - 1e-6);
  EXPECT_LE(worst, 1.0);
}

TEST(SymmetricDecomposition, Examples) {
  const auto pieces = symmetric_decomposition(3, 0, 1);
  ASSERT_EQ(pieces.size(), 2u);
  const auto d = distribution(pieces[0]);
  EXPECT_EQ(d.measure_of(CycloValue::constant(3, Rational(1, 2))), Rational(1, 3));
  EXPECT_EQ(d.measure_of(CycloValue::constant(3, Rational(-1, 2))), Rational(1, 3));
  EXPECT_EQ(d.measure_of(CycloValue(3)), Rational(1, 3));
  const StepFn sum = pieces[0] + pieces[1];
  EXPECT_EQ(sum.value(0).as_rational(), Rational(1));

  const auto binary = symmetric_decomposition(2, 2, 1);
  ASSERT_EQ(binary.size(), 1u);
  EXPECT_TRUE(equal_functions(binary[0], rademacher(2, 2)));
  EXPECT_THROW(symmetric_decomposition(3, 0, 0), DomainError);
}

TEST(SymmetricDecomposition, Properties) {
  for (unsigned p = 2; p <= 7; ++p) {
    for (unsigned k = 0; k <= 1; ++k) {
      for (unsigned j = 1; j < p; ++j) {
        const StepFn rj = rademacher(p, k).pow(j);
        StepFn sum = StepFn::constant(p, Rational(0));
        for (const auto& piece : symmetric_decomposition(p, k, j)) {
          ASSERT_TRUE(distribution(piece).is_symmetric());
          ASSERT_TRUE(integral(piece).is_zero());
          sum = sum + piece;
        }
        ASSERT_TRUE(equal_functions(sum, real_part(rj)));
        ASSERT_TRUE(distribution(imaginary_part_times_i(rj)).is_symmetric());
        // cos(2 pi m j / p) over m is symmetric exactly when p / gcd(j, p) is even.
        ASSERT_EQ(distribution(real_part(rj)).is_symmetric(), (p / std::gcd(j, p)) % 2 == 0) << p << " " << j;
      }
    }
  }
  // The gcd form is what distinguishes p = 6: Re R^2 takes 1, -1/2, -1/2.
  EXPECT_FALSE(distribution(real_part(rademacher(6, 0).pow(2))).is_symmetric());
  EXPECT_TRUE(distribution(real_part(rademacher(6, 0).pow(3))).is_symmetric());
}

TEST(Independence, Examples) {
  const std::vector<std::vector<CycloValue>> rad = {{CycloValue::constant(2, 1), CycloValue::constant(2, -1)},
                                                    {CycloValue::constant(2, 1), CycloValue::constant(2, -1)}};
  EXPECT_TRUE(independence_check(2, rad));
  // mu(r_0 = 1, r_1 = -1) = 1/4 by direct cell count.
  const StepFn both = StepFn::indicator(level_set(rademacher(2, 0), CycloValue::constant(2, 1))) *
                      StepFn::indicator(level_set(rademacher(2, 1), CycloValue::constant(2, -1)));
  EXPECT_EQ(integral(both).as_rational(), Rational(1, 4));

  std::vector<std::vector<CycloValue>> powers(3);
  const unsigned js[3] = {1, 2, 1};
  for (unsigned k = 0; k < 3; ++k)
    for (unsigned m = 0; m < 3; ++m) powers[k].push_back(CycloValue::root(3, js[k] * m));
  EXPECT_TRUE(independence_check(3, powers));

  const std::vector<std::vector<CycloValue>> constant = {std::vector<CycloValue>(5, CycloValue::constant(5, 2))};
  EXPECT_TRUE(independence_check(5, constant));
  EXPECT_THROW(independence_check(3, std::vector<std::vector<CycloValue>>{{CycloValue(3)}}), DomainError);
}

TEST(Independence, RandomTables) {
  std::mt19937_64 rng(13);
  for (unsigned p = 2; p <= 5; ++p) {
    for (int t = 0; t < 100; ++t) {
      const unsigned depth = rng() % 5;
      std::vector<std::vector<CycloValue>> tables(depth + 1);
      for (auto& table : tables) {
        for (unsigned m = 0; m < p; ++m) table.push_back(CycloValue::root(p, rng() % 3) * Rational(rng() % 2));
      }
      ASSERT_TRUE(independence_check(p, tables));
    }
  }
}

}  // namespace
}  // namespace vilenkin
