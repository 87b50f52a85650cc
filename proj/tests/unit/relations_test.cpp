#include <random>

#include <gtest/gtest.h>

#include "fa_twist/errors.hpp"
#include "fa_twist/euler_oracle.hpp"
#include "fa_twist/intersection.hpp"
#include "fa_twist/relations.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace fa_twist {
namespace {

using testing::rel_diff;

EvaluationPoint point(std::initializer_list<double> x) {
  std::vector<double> v(x);
  return EvaluationPoint::real(v);
}

TEST(RelationNameTest, RoundTrip) {
  for (auto r : {Relation::kFirst, Relation::kSecond, Relation::kAssembledFirst}) {
    EXPECT_EQ(relation_from_string(to_string(r)), r);
  }
  EXPECT_EQ(to_string(Relation::kAssembledFirst), "assembled-i");
  EXPECT_THROW(relation_from_string("iii"), std::invalid_argument);
}

TEST(TprLhsTest, OneVariableClosedForms) {
  const Parameters p(0.3, {0.4}, {0.7});
  EXPECT_LE(rel_diff(tpr_lhs_i(p), -25.0 / 6.0), 1e-14);
  EXPECT_LE(rel_diff(tpr_lhs_ii(p), (1.0 - 0.7) / 0.3 / (0.3 - 0.7 + 1.0)), 1e-14);
  const ExactParameters q(Rational(3, 10), {Rational(2, 5)}, {Rational(7, 10)});
  EXPECT_EQ(tpr_lhs_i(q), Rational(-25, 6));
}

TEST(TprLhsTest, SecondRelationSign) {
  std::mt19937_64 rng(51);
  for (int m = 1; m <= 4; ++m) {
    const auto p = testing::random_valid_parameters(rng, m, 0.05, true);
    Complex expected = (m % 2 ? -1.0 : 1.0) / p.a() *
                       a_coefficient(p, MultiIndex::full(m)).value;
    for (int k = 1; k <= m; ++k) expected *= p.c(k) - 1.0;
    EXPECT_LE(rel_diff(tpr_lhs_ii(p), expected), 1e-13);
  }
}

TEST(TprLhsTest, FirstRelationFromCohomology) {
  std::mt19937_64 rng(52);
  for (int m = 1; m <= 4; ++m) {
    const auto p = testing::random_valid_parameters(rng, m);
    Complex expected = cohomology_intersection(p, MultiIndex::empty(m), MultiIndex::empty(m)) /
                       p.a();
    for (int k = 1; k <= m; ++k) expected *= p.c(k) - 1.0;
    EXPECT_LE(rel_diff(tpr_lhs_i(p), expected), 1e-13);
  }
}

TEST(TprRhsTest, OriginReducesToUnitSeries) {
  const Parameters p(0.3, {0.4, 0.5}, {0.7, 1.2});
  const auto x = point({0.0, 0.0});
  Complex sum_i = 0.0, sum_ii = 0.0;
  for (const auto& I : subset_order(2)) {
    const auto s = shifted_parameters(p, I);
    Complex w = 1.0;
    for (int j : I.complement().elements()) w *= (p.c(j) - p.b(j) - 1.0) / p.b(j);
    sum_i += w / s.a_I;
    sum_ii += (I.size() % 2 ? -1.0 : 1.0) / s.a_I;
  }
  EXPECT_LE(rel_diff(tpr_rhs_i(p, x, 10), sum_i), 1e-14);
  EXPECT_LE(rel_diff(tpr_rhs_ii(p, x, 10), sum_ii), 1e-14);
}

TEST(TprCheckTest, OneAndTwoVariableExamples) {
  const Parameters p1(0.3, {0.4}, {0.7});
  for (auto r : {Relation::kFirst, Relation::kSecond}) {
    const auto report = tpr_check(p1, point({0.05}), 40, r);
    EXPECT_LE(report.rel_residual, 1e-8);
    EXPECT_NEAR(report.abs_residual, std::abs(report.lhs - report.rhs),
                4e-16 * std::abs(report.lhs));
  }
  const Parameters p2(0.3, {0.4, 0.5}, {0.7, 1.2});
  for (auto r : {Relation::kFirst, Relation::kSecond, Relation::kAssembledFirst}) {
    const auto report = tpr_check(p2, point({0.05, 0.04}), 40, r);
    EXPECT_LE(report.rel_residual, 1e-8) << to_string(r);
    EXPECT_EQ(report.order, 40);
  }
}

TEST(TprCheckTest, RandomSamplesAndTruncationDecay) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 9; ++trial) {
    const int m = 1 + trial % 3;
    const auto p = testing::random_valid_parameters(rng, m);
    const auto x = testing::random_positive_point(rng, m, 0.05, 0.1);
    for (auto r : {Relation::kFirst, Relation::kSecond}) {
      const auto coarse = tpr_check(p, x, 5, r);
      const auto fine = tpr_check(p, x, 40, r);
      EXPECT_LE(fine.rel_residual, 1e-8) << "trial " << trial;
      EXPECT_LE(fine.rel_residual, coarse.rel_residual) << "trial " << trial;
      if (fine.truncation_bound && coarse.truncation_bound) {
        EXPECT_LE(*fine.truncation_bound, *coarse.truncation_bound);
      }
    }
  }
}

TEST(TprCheckTest, AssembledAgreesWithReduced) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 1 + trial % 3;
    const auto p = testing::random_valid_parameters(rng, m);
    const auto x = testing::random_positive_point(rng, m, 0.05, 0.1);
    const auto reduced = tpr_check(p, x, 40, Relation::kFirst);
    const auto assembled = tpr_check(p, x, 40, Relation::kAssembledFirst);
    EXPECT_LE(assembled.rel_residual, 1e-8);
    EXPECT_LE(std::abs(assembled.rel_residual - reduced.rel_residual), 1e-6);
  }
}

TEST(TprCheckTest, ComplexParameters) {
  std::mt19937_64 rng(55);
  const auto p = testing::random_valid_parameters(rng, 2, 0.05, true);
  const auto report = tpr_check(p, point({0.04, 0.05}), 40, Relation::kSecond);
  EXPECT_LE(report.rel_residual, 1e-8);
}

TEST(TprCheckTest, RejectsInvalidInputs) {
  const Parameters bad(0.3, {1.0}, {0.7});
  try {
    tpr_check(bad, point({0.05}), 40, Relation::kFirst);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& err) {
    EXPECT_NE(std::string(err.what()).find("b_1 integral"), std::string::npos);
  }
  const Parameters p(0.3, {0.4}, {0.7});
  EXPECT_THROW(tpr_check(p, point({-0.05}), 40, Relation::kFirst), DomainError);
}

TEST(GValueTest, EmptyIndexIsBetaTimesFa) {
  const Parameters p(0.3, {0.4, 0.5}, {0.7, 1.2});
  const auto x = point({0.05, 0.04});
  const Complex betas = gamma(0.4) * gamma(0.3) / gamma(0.7) * gamma(0.5) * gamma(0.7) /
                        gamma(1.2);
  EXPECT_LE(rel_diff(g_value(p, MultiIndex::empty(2), x, 40),
                     betas * fa_eval(p, x, 40).value),
            1e-12);
}

TEST(GValueTest, PairProductIsBranchFree) {
  std::mt19937_64 rng(56);
  const auto p = testing::random_valid_parameters(rng, 2);
  const auto x = point({0.05, 0.04});
  for (const auto& N : subset_order(2)) {
    const Complex full = g_value(p, N, x, 40) * g_dual_value(p, N, x, 40);
    EXPECT_LE(rel_diff(full, g_pair_product(p, N, x, 40)), 1e-12) << N.to_string();
    // Perturbing x along the positive reals moves the product only smoothly.
    const auto nearby = point({0.05 * (1 + 1e-7), 0.04});
    EXPECT_LE(rel_diff(g_pair_product(p, N, nearby, 40), g_pair_product(p, N, x, 40)),
              1e-5);
  }
}

}  // namespace
}  // namespace fa_twist
