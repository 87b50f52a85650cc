#include "fa_twist/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fa_twist/errors.hpp"
#include "fa_twist/numerics.hpp"

namespace fa_twist {

namespace {

constexpr double kPoleTolerance = 1e-12;
constexpr std::uint64_t kMaxLatticeEntries = 50'000'000;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

void require_dimension(int expected, int actual, const char* what) {
  if (expected != actual) {
    throw DomainError(std::string(what) + " has dimension " +
                      std::to_string(actual) + ", parameters have m=" +
                      std::to_string(expected));
  }
}

}  // namespace

// --- EvaluationPoint -------------------------------------------------------------

EvaluationPoint::EvaluationPoint(std::vector<Complex> x) : x_(std::move(x)) {
  if (x_.empty()) throw DomainError("evaluation point must have m >= 1");
  for (const auto& v : x_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("evaluation point has a non-finite coordinate");
    }
  }
  if (l1_norm() >= 1.0) {
    throw DomainError("x outside the convergence domain D_A: sum |x_k| = " +
                      std::to_string(l1_norm()) + " >= 1");
  }
}

EvaluationPoint EvaluationPoint::real(std::span<const double> x) {
  return EvaluationPoint(std::vector<Complex>(x.begin(), x.end()));
}

double EvaluationPoint::l1_norm() const {
  double s = 0.0;
  for (const auto& v : x_) s += std::abs(v);
  return s;
}

bool EvaluationPoint::is_real() const {
  return std::all_of(x_.begin(), x_.end(),
                     [](const Complex& v) { return v.imag() == 0.0; });
}

// --- DegreeLattice --------------------------------------------------------------

DegreeLattice::DegreeLattice(int m, int order) : m_(m), order_(order) {
  if (m < 1 || m > kHardMaxDimension) {
    throw std::out_of_range("lattice dimension out of range");
  }
  if (order < 0 || order > 60000) {
    throw DomainError("series order must lie in 0..60000, got " +
                      std::to_string(order));
  }
  const int rows = order + m + 2;
  const int cols = m + 1;
  binom_.assign(static_cast<std::size_t>(rows) * cols, 0);
  for (int n = 0; n < rows; ++n) {
    binom_[static_cast<std::size_t>(n) * cols] = 1;
    for (int k = 1; k <= std::min(n, m); ++k) {
      const std::uint64_t x = binom(n - 1, k - 1);
      const std::uint64_t y = k <= n - 1 ? binom(n - 1, k) : 0;
      binom_[static_cast<std::size_t>(n) * cols + k] =
          (x > kSaturated - y) ? kSaturated : x + y;
    }
  }
  const std::uint64_t count = binom(order + m, m);
  if (count > kMaxLatticeEntries) {
    throw DomainError("series order " + std::to_string(order) +
                      " is too large for m=" + std::to_string(m));
  }

  degrees_.reserve(count * m);
  total_.reserve(count);
  predecessor_.reserve(count);
  direction_.reserve(count);

  std::vector<int> current(static_cast<std::size_t>(m), 0);
  // Ascending lexicographic compositions of `rem` into coordinates pos..m-1.
  auto emit = [&](auto&& self, int pos, int rem, int shell) -> void {
    if (pos == m - 1) {
      current[pos] = rem;
      for (int v : current) degrees_.push_back(static_cast<std::uint16_t>(v));
      total_.push_back(static_cast<std::uint16_t>(shell));
      if (shell == 0) {
        predecessor_.push_back(0);
        direction_.push_back(-1);
        return;
      }
      int k = m - 1;
      while (current[k] == 0) --k;
      --current[k];
      predecessor_.push_back(rank(current));
      ++current[k];
      direction_.push_back(static_cast<std::int8_t>(k));
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      current[pos] = v;
      self(self, pos + 1, rem - v, shell);
    }
    current[pos] = 0;
  };
  for (int d = 0; d <= order; ++d) emit(emit, 0, d, d);
}

std::uint64_t DegreeLattice::binom(int n, int k) const {
  if (k < 0 || n < k) return 0;
  return binom_[static_cast<std::size_t>(n) * (m_ + 1) + k];
}

std::size_t DegreeLattice::rank(std::span<const int> degrees) const {
  int d = 0;
  for (int v : degrees) d += v;
  if (static_cast<int>(degrees.size()) != m_ || d > order_) {
    throw std::out_of_range("multi-degree outside the lattice");
  }
  std::uint64_t r = d == 0 ? 0 : binom(d - 1 + m_, m_);
  int rem = d;
  for (int k = 0; k + 1 < m_; ++k) {
    const int j = m_ - k - 2;
    const int nk = degrees[k];
    // sum_{v < nk} C(rem - v + j, j), by the hockey-stick identity
    r += binom(rem + j + 1, j + 1) - binom(rem - nk + j + 1, j + 1);
    rem -= nk;
  }
  return static_cast<std::size_t>(r);
}

// --- coefficients -----------------------------------------------------------------

CoefficientTable::CoefficientTable(std::shared_ptr<const DegreeLattice> lattice,
                                   std::vector<Complex> coefficients)
    : lattice_(std::move(lattice)), coefficients_(std::move(coefficients)) {
  if (!lattice_ || lattice_->size() != coefficients_.size()) {
    throw std::invalid_argument("coefficient count does not match lattice");
  }
}

CoefficientTable fa_coefficients(const Parameters& p, int order) {
  auto lattice = std::make_shared<const DegreeLattice>(p.m(), order);
  std::vector<Complex> coeff(lattice->size());
  coeff[0] = 1.0;
  for (std::size_t i = 1; i < coeff.size(); ++i) {
    const std::size_t prev = lattice->predecessor(i);
    const int k = lattice->direction(i);
    const double nk = lattice->degrees(prev)[k];
    const double total = lattice->total_degree(prev);
    const Complex denom = (p.c()[k] + nk) * (nk + 1.0);
    if (std::abs(p.c()[k] + nk) < kPoleTolerance) {
      throw PoleError("Pochhammer (c_" + std::to_string(k + 1) + ", n) hits 0 at n=" +
                      std::to_string(static_cast<int>(nk) + 1));
    }
    coeff[i] = coeff[prev] * ((p.a() + total) * (p.b()[k] + nk)) / denom;
  }
  return CoefficientTable(std::move(lattice), std::move(coeff));
}

SeriesValue fa_eval(const Parameters& p, const CoefficientTable& table,
                    const EvaluationPoint& x) {
  require_dimension(p.m(), x.m(), "evaluation point");
  require_dimension(p.m(), table.m(), "coefficient table");
  const auto& lattice = table.lattice();
  std::vector<Complex> monomial(table.size());
  monomial[0] = 1.0;
  CompensatedSum sum;
  sum.add(table[0]);
  for (std::size_t i = 1; i < table.size(); ++i) {
    monomial[i] = monomial[lattice.predecessor(i)] * x.x()[lattice.direction(i)];
    sum.add(table[i] * monomial[i]);
  }
  return SeriesValue{sum.value(), table.order(),
                     fa_tail_bound(p, x, table.order()), table.size()};
}

SeriesValue fa_eval(const Parameters& p, const EvaluationPoint& x, int order) {
  require_dimension(p.m(), x.m(), "evaluation point");
  return fa_eval(p, fa_coefficients(p, order), x);
}

ExtendedComplex fa_eval_extended(const ExtendedParameters& p,
                                 const EvaluationPoint& x, int order) {
  require_dimension(p.m(), x.m(), "evaluation point");
  const DegreeLattice lattice(p.m(), order);
  std::vector<ExtendedComplex> coeff(lattice.size()), monomial(lattice.size());
  coeff[0] = 1.0L;
  monomial[0] = 1.0L;
  // Neumaier summation, separately on real and imaginary parts.
  long double sum[2] = {1.0L, 0.0L}, comp[2] = {0.0L, 0.0L};
  auto accumulate = [&](int part, long double v) {
    const long double t = sum[part] + v;
    comp[part] += std::fabs(sum[part]) >= std::fabs(v) ? (sum[part] - t) + v
                                                       : (v - t) + sum[part];
    sum[part] = t;
  };
  for (std::size_t i = 1; i < lattice.size(); ++i) {
    const std::size_t prev = lattice.predecessor(i);
    const int k = lattice.direction(i);
    const long double nk = lattice.degrees(prev)[k];
    const long double total = lattice.total_degree(prev);
    if (std::abs(p.c()[k] + nk) < kPoleTolerance) {
      throw PoleError("Pochhammer (c_" + std::to_string(k + 1) + ", n) hits 0 at n=" +
                      std::to_string(static_cast<int>(nk) + 1));
    }
    coeff[i] = coeff[prev] * ((p.a() + total) * (p.b()[k] + nk)) /
               ((p.c()[k] + nk) * (nk + 1.0L));
    monomial[i] = monomial[prev] * ExtendedComplex(x.x()[k]);
    const ExtendedComplex term = coeff[i] * monomial[i];
    accumulate(0, term.real());
    accumulate(1, term.imag());
  }
  return {sum[0] + comp[0], sum[1] + comp[1]};
}

SeriesValue local_solution_eval(const Parameters& p, const MultiIndex& I,
                                const EvaluationPoint& x, int order) {
  require_dimension(p.m(), x.m(), "evaluation point");
  if (!x.is_real()) {
    throw BranchError("local solutions are evaluated at real points only");
  }
  Complex prefactor = 1.0;
  for (int k : I.elements()) {
    const double xk = x.x(k).real();
    if (!(xk > 0.0)) {
      throw BranchError("x_" + std::to_string(k) + " = " + std::to_string(xk) +
                        " lies on the branch cut (-inf, 0] of x^(1-c)");
    }
    prefactor *= std::exp((1.0 - p.c(k)) * std::log(xk));
  }
  const auto shifted = shifted_parameters(p, I).as_parameters();
  SeriesValue v = fa_eval(shifted, x, order);
  v.value *= prefactor;
  if (v.tail_bound) *v.tail_bound *= std::abs(prefactor);
  return v;
}

double recurrence_residual(const Parameters& p, const CoefficientTable& table,
                           int order) {
  if (table.order() < order + 1) {
    throw std::invalid_argument("coefficient table must reach order + 1");
  }
  const auto& lattice = table.lattice();
  const int m = p.m();
  std::vector<int> up(static_cast<std::size_t>(m));
  double worst = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const int total = lattice.total_degree(i);
    if (total > order) break;  // shells are stored in increasing degree
    const auto deg = lattice.degrees(i);
    std::copy(deg.begin(), deg.end(), up.begin());
    for (int k = 0; k < m; ++k) {
      const double nk = deg[k];
      ++up[k];
      const Complex next = table.at(up);
      --up[k];
      const Complex lhs = next * (p.c()[k] + nk) * (nk + 1.0);
      const Complex rhs = table[i] * (p.a() + static_cast<double>(total)) *
                          (p.b()[k] + nk);
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(table[i])));
    }
  }
  return worst;
}

double coefficient_recurrence_residual(const Parameters& p, int order) {
  return recurrence_residual(p, fa_coefficients(p, order + 1), order);
}

std::optional<double> fa_tail_bound(const Parameters& p,
                                    const EvaluationPoint& x, int order) {
  require_dimension(p.m(), x.m(), "evaluation point");
  const double s = x.l1_norm();
  if (s == 0.0) return 0.0;
  const double n = order;
  double rho = s * std::max(1.0, (std::abs(p.a()) + n) / (n + 1.0));
  for (int k = 0; k < p.m(); ++k) {
    const double ck = std::abs(p.c()[k]);
    if (n <= ck) return std::nullopt;
    rho *= std::max(1.0, (std::abs(p.b()[k]) + n) / (n - ck));
  }
  if (!(rho < 1.0)) return std::nullopt;

  // log U_N
  double log_u = n * std::log(s);
  for (int j = 0; j < order; ++j) {
    log_u += std::log(std::abs(p.a() + static_cast<double>(j))) -
             std::log(j + 1.0);
  }
  for (int k = 0; k < p.m(); ++k) {
    double log_beta = 0.0, log_max = 0.0;
    for (int j = 0; j < order; ++j) {
      log_beta += std::log(std::abs(p.b()[k] + static_cast<double>(j))) -
                  std::log(std::abs(p.c()[k] + static_cast<double>(j)));
      log_max = std::max(log_max, log_beta);
    }
    log_u += log_max;
  }
  return std::exp(log_u) * rho / (1.0 - rho);
}

}  // namespace fa_twist
