#pragma once

// Integral-side values: direct quadrature of the Euler-type integral, and
// the closed forms of the integrals over the twisted cycles Delta_I.

#include "fa_twist/numerics.hpp"
#include "fa_twist/params.hpp"
#include "fa_twist/series.hpp"

namespace fa_twist {

struct EulerIntegralResult {
  Complex value;  ///< prefactor times the integral over (0,1)^m
  Complex prefactor;
  QuadratureResult quadrature;
};

/// F_A(a,b,c;x) = prod_k Gamma(c_k)/(Gamma(b_k)Gamma(c_k-b_k))
///   * int_{(0,1)^m} prod_k t_k^{b_k-1}(1-t_k)^{c_k-b_k-1} (1 - sum_k x_k t_k)^{-a} dt
///
/// Requires Re c_k > Re b_k > 0, m <= 3 and x real (InputError otherwise).
/// Non-convergence is reported through `quadrature.converged`.
EulerIntegralResult euler_integral_eval(const Parameters& p,
                                        const EvaluationPoint& x,
                                        const QuadratureConfig& cfg = {});

/// Gamma-factor part of F_I:
///   prod_{i in I} Gamma(c_i - 1) * prod_{j not in I} B(b_j, c_j - b_j)
///   * Gamma(1 - a) / Gamma(sum_{i in I} c_i - a - r + 1).
Complex cycle_gamma_factor(const Parameters& p, const MultiIndex& I);

/// F_I = cycle_gamma_factor(p, I) * F_A(a_I, b^I, c^I; x).
Complex f_capital_eval(const Parameters& p, const MultiIndex& I,
                       const EvaluationPoint& x, int order);

struct CycleIntegralValue {
  Complex value;
  Complex phase;         ///< exp(pi i (sum b_I - sum c_I + r))
  Complex power;         ///< prod_{i in I} x_i^{1 - c_i}
  Complex gamma_factor;  ///< cycle_gamma_factor(p, I)
  SeriesValue fa_part;   ///< F_A(a_I, b^I, c^I; x)
};

/// The integral of u * dt/(t_1...t_m) over Delta_I:
///   phase * power * gamma_factor * fa_part.value.
/// x must be real with x_i > 0 for i in I (BranchError otherwise).
CycleIntegralValue cycle_integral_value(const Parameters& p,
                                        const MultiIndex& I,
                                        const EvaluationPoint& x, int order);

}  // namespace fa_twist
