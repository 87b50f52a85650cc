#include "fa_twist/params.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fa_twist/errors.hpp"

namespace fa_twist {

template <class T>
BasicParameters<T>::BasicParameters(T a, std::vector<T> b, std::vector<T> c,
                                     int max_dimension)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (b_.size() != c_.size()) {
    throw ValidationError("parameter vectors b and c differ in length (" +
                          std::to_string(b_.size()) + " vs " +
                          std::to_string(c_.size()) + ")");
  }
  if (b_.empty()) throw ValidationError("dimension m must be at least 1");
  const int limit = std::min(max_dimension, kHardMaxDimension);
  if (static_cast<int>(b_.size()) > limit) {
    throw ValidationError("dimension m=" + std::to_string(b_.size()) +
                          " exceeds m_max=" + std::to_string(limit));
  }
}

template class BasicParameters<Complex>;
template class BasicParameters<Rational>;
template class BasicParameters<ExtendedComplex>;

ExtendedParameters to_extended(const Parameters& p) {
  std::vector<ExtendedComplex> b(p.b().begin(), p.b().end());
  std::vector<ExtendedComplex> c(p.c().begin(), p.c().end());
  return ExtendedParameters(ExtendedComplex(p.a()), std::move(b), std::move(c),
                            kHardMaxDimension);
}

ExactParameters to_exact(const Parameters& p) {
  auto convert = [](const Complex& z, const char* name) {
    if (z.imag() != 0.0 || !std::isfinite(z.real())) {
      throw ValidationError(std::string("exact mode requires finite real ") +
                            name);
    }
    // Every finite double is a dyadic rational; the conversion is exact.
    return Rational(z.real());
  };
  std::vector<Rational> b, c;
  for (const auto& v : p.b()) b.push_back(convert(v, "b"));
  for (const auto& v : p.c()) c.push_back(convert(v, "c"));
  return ExactParameters(convert(p.a(), "a"), std::move(b), std::move(c),
                         kHardMaxDimension);
}

// --- MultiIndex --------------------------------------------------------------

MultiIndex MultiIndex::from_mask(std::uint32_t mask, int m) {
  if (m < 0 || m > kHardMaxDimension) {
    throw std::out_of_range("subset dimension out of range: " +
                            std::to_string(m));
  }
  if (m < 32 && (mask >> m) != 0) {
    throw std::out_of_range("subset mask " + std::to_string(mask) +
                            " has elements beyond m=" + std::to_string(m));
  }
  return MultiIndex(mask, m);
}

MultiIndex MultiIndex::from_elements(std::span<const int> elements, int m) {
  std::uint32_t mask = 0;
  int previous = 0;
  for (int k : elements) {
    if (k < 1 || k > m) {
      throw std::out_of_range("index " + std::to_string(k) +
                              " outside 1.." + std::to_string(m));
    }
    if (k <= previous) {
      throw std::out_of_range("indices must be strictly increasing");
    }
    previous = k;
    mask |= 1u << (k - 1);
  }
  return from_mask(mask, m);
}

int MultiIndex::size() const { return std::popcount(mask_); }

bool MultiIndex::contains(int k) const {
  if (k < 1 || k > m_) {
    throw std::out_of_range("index " + std::to_string(k) + " outside 1.." +
                            std::to_string(m_));
  }
  return (mask_ >> (k - 1)) & 1u;
}

std::vector<int> MultiIndex::elements() const {
  std::vector<int> out;
  for (int k = 1; k <= m_; ++k) {
    if ((mask_ >> (k - 1)) & 1u) out.push_back(k);
  }
  return out;
}

MultiIndex MultiIndex::complement() const {
  return MultiIndex(~mask_ & ((1u << m_) - 1u), m_);
}

MultiIndex MultiIndex::without(int k) const {
  return MultiIndex(mask_ & ~(1u << (k - 1)), m_);
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int k : elements()) {
    if (!first) os << ',';
    os << k;
    first = false;
  }
  os << '}';
  return os.str();
}

// --- shifts and exponentials ---------------------------------------------------

Parameters ShiftedParameters::as_parameters() const {
  return Parameters(a_I, bI, cI, kHardMaxDimension);
}

ShiftedParameters shifted_parameters(const Parameters& p, const MultiIndex& I) {
  if (I.m() != p.m()) {
    throw std::out_of_range("subset " + I.to_string() + " is for m=" +
                            std::to_string(I.m()) + ", parameters have m=" +
                            std::to_string(p.m()));
  }
  ShiftedParameters s{p, I, p.a(), {p.b().begin(), p.b().end()},
                      {p.c().begin(), p.c().end()}};
  for (int k : I.elements()) {
    const Complex ck = p.c(k);
    s.a_I += 1.0 - ck;
    s.bI[k - 1] = p.b(k) - ck + 1.0;
    s.cI[k - 1] = 2.0 - ck;
  }
  return s;
}

Parameters dual_parameters(const Parameters& p) {
  std::vector<Complex> b, c;
  for (const auto& v : p.b()) b.push_back(-v);
  for (const auto& v : p.c()) c.push_back(2.0 - v);
  return Parameters(-p.a(), std::move(b), std::move(c), kHardMaxDimension);
}

namespace {

Complex exp_two_pi_i(const Complex& z) {
  // Reduce the real part first so that exp(2*pi*i*k) is exactly 1 for
  // integer k and the phase keeps full precision for large |Re z|.
  const double frac = z.real() - std::round(z.real());
  const double angle = 2.0 * std::numbers::pi * frac;
  const double modulus = std::exp(-2.0 * std::numbers::pi * z.imag());
  // Hit the quarter turns exactly.
  if (frac == 0.0) return {modulus, 0.0};
  if (frac == 0.5 || frac == -0.5) return {-modulus, 0.0};
  if (frac == 0.25) return {0.0, modulus};
  if (frac == -0.25) return {0.0, -modulus};
  return std::polar(modulus, angle);
}

}  // namespace

ExponentialParams exponential_params(const Parameters& p) {
  ExponentialParams e{exp_two_pi_i(p.a()), {}, {}};
  for (const auto& v : p.b()) e.beta.push_back(exp_two_pi_i(v));
  for (const auto& v : p.c()) e.gamma.push_back(exp_two_pi_i(v));
  return e;
}

std::vector<MultiIndex> subset_order(int m, int max_dimension) {
  if (m < 1 || m > std::min(max_dimension, kHardMaxDimension)) {
    throw std::out_of_range("m=" + std::to_string(m) + " outside 1.." +
                            std::to_string(max_dimension));
  }
  std::vector<MultiIndex> order;
  order.reserve(std::size_t{1} << m);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    order.push_back(MultiIndex::from_mask(mask, m));
  }
  return order;
}

// --- validation -----------------------------------------------------------------

bool is_near_integer(const Complex& z, double eps) {
  return std::abs(z.imag()) < eps &&
         std::abs(z.real() - std::round(z.real())) <= eps;
}

namespace {

double distance_to_integers(const Complex& z) {
  return std::hypot(z.real() - std::round(z.real()), z.imag());
}

std::string label_for(const std::string& condition, const MultiIndex& idx) {
  if (condition == "a-sum(c_I)") {
    std::string s = "a";
    for (int k : idx.elements()) s += "-c_" + std::to_string(k);
    return s;
  }
  const std::string k = std::to_string(idx.elements().front());
  if (condition == "b_k") return "b_" + k;
  if (condition == "c_k") return "c_" + k;
  return "c_" + k + "-b_" + k;
}

}  // namespace

std::string Violation::describe() const {
  return label_for(condition, indices) + " integral";
}

ValidationReport validate(const Parameters& p, double eps_int) {
  if (!(eps_int > 0.0)) {
    throw std::invalid_argument("eps_int must be positive");
  }
  ValidationReport report;
  const int m = p.m();
  auto check = [&](const std::string& condition, const MultiIndex& idx,
                   const Complex& value) {
    if (is_near_integer(value, eps_int)) {
      report.violations.push_back({condition, idx, value});
    } else if (distance_to_integers(value) < kConditioningWarningDistance) {
      report.warnings.push_back(label_for(condition, idx) +
                                " is within 1e-6 of an integer; gamma factors "
                                "are ill-conditioned");
    }
  };
  for (int k = 1; k <= m; ++k) {
    const auto single = MultiIndex::from_mask(1u << (k - 1), m);
    check("b_k", single, p.b(k));
    check("c_k-b_k", single, p.c(k) - p.b(k));
    check("c_k", single, p.c(k));
  }
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    const auto I = MultiIndex::from_mask(mask, m);
    Complex value = p.a();
    for (int k : I.elements()) value -= p.c(k);
    check("a-sum(c_I)", I, value);
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace fa_twist
