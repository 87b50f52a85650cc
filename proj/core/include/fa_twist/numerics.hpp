#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace fa_twist {

using Complex = std::complex<double>;

/// Complex Gamma function. Lanczos approximation (g = 607/128, 15 terms)
/// for Re z >= 1/2 and the reflection formula Gamma(z)Gamma(1-z) =
/// pi/sin(pi z) below. Throws PoleError within 1e-12 of 0, -1, -2, ...
Complex gamma(Complex z);

/// Rising factorial z (z+1) ... (z+n-1), accumulated left to right.
Complex pochhammer(Complex z, unsigned n);

/// Neumaier-compensated accumulator over complex values; real and
/// imaginary parts are compensated independently.
class CompensatedSum {
 public:
  void add(Complex v);
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void step(double v, double& sum, double& carry);
  double re_ = 0.0, re_c_ = 0.0;
  double im_ = 0.0, im_c_ = 0.0;
};

/// Number of worker threads: FA_TWIST_THREADS if set (>= 1), else the
/// hardware concurrency.
unsigned worker_threads();

enum class QuadratureTransform { kDoubleExponential };

struct QuadratureConfig {
  int levels = 7;  ///< level l uses step h = 2^-l on the DE axis
  double target_abs_err = 1e-10;
  QuadratureTransform transform = QuadratureTransform::kDoubleExponential;
};

/// A quadrature abscissa in (0,1) together with 1 - t, both carried at full
/// relative precision so endpoint singularities can be evaluated safely.
struct DeNode {
  double t;
  double one_minus_t;
};

struct QuadratureResult {
  Complex value;
  double err_est = 0.0;  ///< |S_l - S_{l-1}| at the final level
  bool converged = false;
  int level = 0;
  std::size_t evaluations = 0;
};

using Integrand = std::function<Complex(std::span<const DeNode>)>;

/// Tensor-product tanh-sinh quadrature of f over (0,1)^dims, dims in 1..3.
/// Each level halves the step; the error estimate is the difference of the
/// last two levels and `converged` reports err_est <= target. Nodes closer
/// than 10^(-300/dims) to an endpoint are dropped so that products of
/// endpoint-singular factors stay finite.
QuadratureResult integrate_de(int dims, const Integrand& f,
                              const QuadratureConfig& cfg = {});

}  // namespace fa_twist
