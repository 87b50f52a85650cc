#include "fa_twist/euler_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fa_twist/errors.hpp"

namespace fa_twist {

EulerIntegralResult euler_integral_eval(const Parameters& p,
                                        const EvaluationPoint& x,
                                        const QuadratureConfig& cfg) {
  const int m = p.m();
  if (x.m() != m) throw DomainError("evaluation point dimension mismatch");
  if (m > 3) throw InputError("Euler quadrature supports m <= 3");
  if (!x.is_real()) throw InputError("Euler quadrature needs real x");
  for (int k = 1; k <= m; ++k) {
    if (!(p.c(k).real() > p.b(k).real() && p.b(k).real() > 0.0)) {
      throw InputError("Euler integral requires Re c_" + std::to_string(k) +
                       " > Re b_" + std::to_string(k) + " > 0");
    }
  }

  Complex prefactor = 1.0;
  for (int k = 1; k <= m; ++k) {
    prefactor *= gamma(p.c(k)) / (gamma(p.b(k)) * gamma(p.c(k) - p.b(k)));
  }

  std::vector<double> xs(m);
  std::vector<Complex> left(m), right(m);
  for (int k = 0; k < m; ++k) {
    xs[k] = x.x()[k].real();
    left[k] = p.b()[k] - 1.0;
    right[k] = p.c()[k] - p.b()[k] - 1.0;
  }
  const Complex a = p.a();

  auto integrand = [&](std::span<const DeNode> t) {
    Complex log_value = 0.0;
    double v = 1.0;
    for (int k = 0; k < m; ++k) {
      log_value += left[k] * std::log(t[k].t) +
                   right[k] * std::log(t[k].one_minus_t);
      v -= xs[k] * t[k].t;
    }
    log_value -= a * std::log(v);
    return std::exp(log_value);
  };

  EulerIntegralResult result;
  result.prefactor = prefactor;
  result.quadrature = integrate_de(m, integrand, cfg);
  result.value = prefactor * result.quadrature.value;
  return result;
}

Complex cycle_gamma_factor(const Parameters& p, const MultiIndex& I) {
  if (I.m() != p.m()) throw std::out_of_range("subset dimension mismatch");
  Complex factor = 1.0;
  Complex c_sum = 0.0;
  for (int k = 1; k <= p.m(); ++k) {
    if (I.contains(k)) {
      factor *= gamma(p.c(k) - 1.0);
      c_sum += p.c(k);
    } else {
      factor *= gamma(p.b(k)) * gamma(p.c(k) - p.b(k)) / gamma(p.c(k));
    }
  }
  const double r = I.size();
  return factor * gamma(1.0 - p.a()) / gamma(c_sum - p.a() - r + 1.0);
}

Complex f_capital_eval(const Parameters& p, const MultiIndex& I,
                       const EvaluationPoint& x, int order) {
  const auto shifted = shifted_parameters(p, I).as_parameters();
  return cycle_gamma_factor(p, I) * fa_eval(shifted, x, order).value;
}

CycleIntegralValue cycle_integral_value(const Parameters& p,
                                        const MultiIndex& I,
                                        const EvaluationPoint& x, int order) {
  if (x.m() != p.m()) throw DomainError("evaluation point dimension mismatch");
  if (!x.is_real()) throw BranchError("cycle integrals need real x");

  Complex exponent = static_cast<double>(I.size());
  Complex power = 1.0;
  for (int k : I.elements()) {
    const double xk = x.x(k).real();
    if (!(xk > 0.0)) {
      throw BranchError("x_" + std::to_string(k) +
                        " must be positive for the power x^(1-c)");
    }
    exponent += p.b(k) - p.c(k);
    power *= std::exp((1.0 - p.c(k)) * std::log(xk));
  }

  CycleIntegralValue out;
  // exp(pi i e) has period 2 in Re e.
  exponent -= 2.0 * std::round(exponent.real() / 2.0);
  out.phase = std::exp(Complex(0.0, std::numbers::pi) * exponent);
  out.power = power;
  out.gamma_factor = cycle_gamma_factor(p, I);
  out.fa_part = fa_eval(shifted_parameters(p, I).as_parameters(), x, order);
  out.value = out.phase * out.power * out.gamma_factor * out.fa_part.value;
  return out;
}

}  // namespace fa_twist
