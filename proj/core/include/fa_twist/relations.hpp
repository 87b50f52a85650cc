#pragma once

// Twisted period relations for F_A.
//
// With a_I = a + r - sum_{i in I} c_i, btilde^I = 1 - b^I, ctilde^I = 2 - c^I:
//
// (i)  prod_k (c_k - 1)/a * sum_I A_I prod_{j not in I} 1/b_j
//        = sum_I prod_{j not in I} (c_j - b_j - 1)/b_j / a_I
//                * F_A(a_I, b^I, c^I; x) F_A(-a_I, -b^I, ctilde^I; x)
//
// (ii) prod_k (1 - c_k)/a * A_{1..m}
//        = sum_I (-1)^r / a_I * F_A(a_I, b^I, c^I; x) F_A(-a_I, btilde^I, ctilde^I; x)
//
// "assembled-i" checks (i) before the gamma factors are cancelled:
//   I_c(phi, phi) = sum_N g_N g_N^vee / I_h(Delta_N, Delta_N^vee).

#include <optional>
#include <string_view>

#include "fa_twist/params.hpp"
#include "fa_twist/series.hpp"

namespace fa_twist {

enum class Relation { kFirst, kSecond, kAssembledFirst };

/// "i", "ii", "assembled-i".
std::string_view to_string(Relation relation);
/// Throws std::invalid_argument for unknown names.
Relation relation_from_string(std::string_view name);

/// Relations i and ii are evaluated in long double; lhs and rhs are then
/// rounded to double, while the residuals are taken from the unrounded sides.
struct TprReport {
  Relation relation;
  Complex lhs;
  Complex rhs;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  int order = 0;
  EvaluationPoint x;
  /// Propagated series truncation bound on |rhs - rhs_exact|, when every
  /// series involved has a certified tail bound.
  std::optional<double> truncation_bound;
};

template <class T>
T tpr_lhs_i(const BasicParameters<T>& p);

template <class T>
T tpr_lhs_ii(const BasicParameters<T>& p);

Complex tpr_rhs_i(const Parameters& p, const EvaluationPoint& x, int order);
Complex tpr_rhs_ii(const Parameters& p, const EvaluationPoint& x, int order);

/// g_{phi, N}: the integral of u * phi over Delta_N.
Complex g_value(const Parameters& p, const MultiIndex& N,
                const EvaluationPoint& x, int order);
/// The same integral for 1/u, i.e. g_value at the dual parameters.
Complex g_dual_value(const Parameters& p, const MultiIndex& N,
                     const EvaluationPoint& x, int order);
/// g_value * g_dual_value with the x-power prefactors (which multiply to 1)
/// left out, so the product carries no branch choice.
Complex g_pair_product(const Parameters& p, const MultiIndex& N,
                       const EvaluationPoint& x, int order);

/// Validates p (ValidationError lists the failed conditions), requires a
/// real positive x, then evaluates both sides of the chosen relation.
TprReport tpr_check(const Parameters& p, const EvaluationPoint& x, int order,
                    Relation relation);

}  // namespace fa_twist
