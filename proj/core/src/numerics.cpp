#include "fa_twist/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fa_twist/errors.hpp"

namespace fa_twist {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleTolerance = 1e-12;

// Godfrey's coefficients for g = 607/128, n = 15.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5};

Complex lanczos_gamma(Complex z) {
  z -= 1.0;
  Complex series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) {
    series += kLanczos[k] / (z + static_cast<double>(k));
  }
  const Complex t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * series;
}

// sin(pi z) with the integer part of Re z removed exactly.
Complex sin_pi(Complex z) {
  const double n = std::round(z.real());
  const Complex s = std::sin(kPi * (z - n));
  return std::fmod(std::abs(n), 2.0) == 1.0 ? -s : s;
}

}  // namespace

Complex gamma(Complex z) {
  const double nearest = std::round(z.real());
  if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) <= kPoleTolerance) {
    throw PoleError("gamma pole at z = " + std::to_string(z.real()) +
                    (z.imag() != 0.0 ? "+" + std::to_string(z.imag()) + "i"
                                     : std::string()));
  }
  if (z.real() < 0.5) {
    return kPi / (sin_pi(z) * lanczos_gamma(1.0 - z));
  }
  return lanczos_gamma(z);
}

Complex pochhammer(Complex z, unsigned n) {
  Complex product = 1.0;
  for (unsigned j = 0; j < n; ++j) product *= z + static_cast<double>(j);
  return product;
}

void CompensatedSum::step(double v, double& sum, double& carry) {
  const double t = sum + v;
  if (std::abs(sum) >= std::abs(v)) {
    carry += (sum - t) + v;
  } else {
    carry += (v - t) + sum;
  }
  sum = t;
}

void CompensatedSum::add(Complex v) {
  step(v.real(), re_, re_c_);
  step(v.imag(), im_, im_c_);
}

unsigned worker_threads() {
  if (const char* env = std::getenv("FA_TWIST_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// --- double-exponential quadrature ---------------------------------------------

namespace {

struct WeightedNode {
  DeNode node;
  double weight;
};

std::vector<WeightedNode> de_nodes(int level, int dims) {
  const double h = std::ldexp(1.0, -level);
  const double floor_exponent = 300.0 / dims;  // min(t, 1-t) >= 10^-floor_exponent
  const double s_max = floor_exponent * std::numbers::ln10;
  const double u_max = std::asinh(s_max / kPi);
  const int count = static_cast<int>(std::floor(u_max / h));

  std::vector<WeightedNode> nodes;
  nodes.reserve(static_cast<std::size_t>(2 * count + 1));
  for (int k = -count; k <= count; ++k) {
    const double u = k * h;
    const double s = kPi * std::sinh(u);
    double t, tc;
    if (s >= 0.0) {
      const double e = std::exp(-s);
      t = 1.0 / (1.0 + e);
      tc = e / (1.0 + e);
    } else {
      const double e = std::exp(s);
      t = e / (1.0 + e);
      tc = 1.0 / (1.0 + e);
    }
    const double weight = h * kPi * std::cosh(u) * t * tc;
    nodes.push_back({{t, tc}, weight});
  }
  return nodes;
}

// Sum over the tensor grid. Work is split across threads by the outermost
// node index; each outer slice is reduced independently and slices are
// merged in index order, so the result does not depend on the thread count.
Complex tensor_sum(int dims, const std::vector<WeightedNode>& nodes,
                   const Integrand& f) {
  const std::size_t n = nodes.size();
  std::vector<Complex> slices(n);

  auto slice = [&](std::size_t outer) {
    std::array<DeNode, 3> point{};
    point[0] = nodes[outer].node;
    const double w0 = nodes[outer].weight;
    CompensatedSum sum;
    if (dims == 1) {
      sum.add(w0 * f(std::span<const DeNode>(point.data(), 1)));
    } else if (dims == 2) {
      for (std::size_t j = 0; j < n; ++j) {
        point[1] = nodes[j].node;
        sum.add(w0 * nodes[j].weight *
                f(std::span<const DeNode>(point.data(), 2)));
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        point[1] = nodes[j].node;
        const double w1 = w0 * nodes[j].weight;
        for (std::size_t k = 0; k < n; ++k) {
          point[2] = nodes[k].node;
          sum.add(w1 * nodes[k].weight *
                  f(std::span<const DeNode>(point.data(), 3)));
        }
      }
    }
    slices[outer] = sum.value();
  };

  const unsigned threads =
      dims == 1 ? 1u : std::min<unsigned>(worker_threads(),
                                          static_cast<unsigned>(n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) slice(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += threads) slice(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  CompensatedSum total;
  for (const auto& s : slices) total.add(s);
  return total.value();
}

}  // namespace

QuadratureResult integrate_de(int dims, const Integrand& f,
                              const QuadratureConfig& cfg) {
  if (dims < 1 || dims > 3) {
    throw std::invalid_argument("integrate_de supports 1..3 dimensions, got " +
                                std::to_string(dims));
  }
  if (cfg.levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (!(cfg.target_abs_err > 0.0)) {
    throw std::invalid_argument("target_abs_err must be positive");
  }

  QuadratureResult result;
  result.err_est = std::numeric_limits<double>::infinity();
  Complex previous;
  for (int level = 1; level <= cfg.levels; ++level) {
    const auto nodes = de_nodes(level, dims);
    const Complex current = tensor_sum(dims, nodes, f);
    std::size_t evals = 1;
    for (int d = 0; d < dims; ++d) evals *= nodes.size();
    result.evaluations += evals;
    result.value = current;
    result.level = level;
    if (level > 1) result.err_est = std::abs(current - previous);
    // Convergence is accepted from level 3 on.
    if (level >= 3 && result.err_est <= cfg.target_abs_err) {
      result.converged = true;
      break;
    }
    previous = current;
  }
  return result;
}

}  // namespace fa_twist
