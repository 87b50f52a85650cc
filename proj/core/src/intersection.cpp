#include "fa_twist/intersection.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "fa_twist/errors.hpp"

namespace fa_twist {

namespace {

bool vanishes(const Complex& z) { return std::abs(z) < kResonanceThreshold; }
bool vanishes(const Rational& q) { return q == 0; }
bool vanishes(const ExtendedComplex& z) { return std::abs(z) < kResonanceThreshold; }

std::string show(const Complex& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}
std::string show(const Rational& q) { return q.str(); }
std::string show(const ExtendedComplex& z) { return show(Complex(z)); }

template <class T>
T one() {
  return T(1);
}

void require_same_m(int m, const MultiIndex& I) {
  if (I.m() != m) {
    throw std::out_of_range("subset " + I.to_string() + " is for m=" +
                            std::to_string(I.m()) + ", expected m=" +
                            std::to_string(m));
  }
}

// a - sum_{i in S} c_i + |S|
template <class T>
T level_denominator(const BasicParameters<T>& p, std::uint32_t mask) {
  T value = p.a();
  int size = 0;
  for (int k = 0; k < p.m(); ++k) {
    if ((mask >> k) & 1u) {
      value -= p.c()[k];
      ++size;
    }
  }
  value += T(size);
  if (vanishes(value)) {
    throw ResonanceError(
        "A_N denominator a - sum c + |N| vanishes for N=" +
        MultiIndex::from_mask(mask, p.m()).to_string() + " (value " +
        show(value) + ")");
  }
  return value;
}

// A_S for every S subset of `within`, indexed by mask (other slots unset).
template <class T>
std::vector<T> chain_sums(const BasicParameters<T>& p, std::uint32_t within) {
  std::vector<T> table(std::size_t{1} << p.m());
  table[0] = one<T>();
  // Masks increase, so every S \ {i} is filled before S.
  for (std::uint32_t mask = 1; mask < table.size(); ++mask) {
    if ((mask & ~within) != 0) continue;
    T sum = T(0);
    for (int k = 0; k < p.m(); ++k) {
      if ((mask >> k) & 1u) sum += table[mask & ~(1u << k)];
    }
    table[mask] = sum / level_denominator(p, mask);
  }
  return table;
}

}  // namespace

// --- homology ---------------------------------------------------------------------

Complex homology_self_intersection(const ExponentialParams& e,
                                   const MultiIndex& I) {
  const int m = static_cast<int>(e.beta.size());
  require_same_m(m, I);
  auto guard = [&](const Complex& denom, const std::string& what) {
    if (vanishes(denom)) {
      throw ResonanceError("homology intersection for I=" + I.to_string() +
                           ": " + what + " vanishes");
    }
  };
  guard(e.alpha - 1.0, "alpha - 1");
  Complex gamma_product = 1.0;
  Complex denom = e.alpha - 1.0;
  Complex value = 1.0;
  for (int k = 1; k <= m; ++k) {
    const Complex beta = e.beta[k - 1];
    const Complex gamma = e.gamma[k - 1];
    if (I.contains(k)) {
      guard(1.0 - gamma, "1 - gamma_" + std::to_string(k));
      gamma_product *= gamma;
      denom *= 1.0 - gamma;
    } else {
      guard(1.0 - beta, "1 - beta_" + std::to_string(k));
      guard(beta - gamma, "beta_" + std::to_string(k) + " - gamma_" +
                              std::to_string(k));
      value *= beta * (1.0 - gamma) / ((1.0 - beta) * (beta - gamma));
    }
  }
  return (e.alpha - gamma_product) / denom * value;
}

HomologyIntersectionMatrix::HomologyIntersectionMatrix(
    std::vector<MultiIndex> order, std::vector<Complex> diag)
    : order_(std::move(order)), diag_(std::move(diag)) {
  if (order_.size() != diag_.size()) {
    throw std::invalid_argument("basis and diagonal differ in length");
  }
}

Complex HomologyIntersectionMatrix::entry(const MultiIndex& I,
                                          const MultiIndex& J) const {
  if (I.mask() >= diag_.size() || J.mask() >= diag_.size()) {
    throw std::out_of_range("subset outside the basis");
  }
  return I == J ? diag_[I.mask()] : Complex(0.0, 0.0);
}

Complex HomologyIntersectionMatrix::determinant() const {
  return std::accumulate(diag_.begin(), diag_.end(), Complex(1.0),
                         std::multiplies<>());
}

HomologyIntersectionMatrix homology_intersection_matrix(
    const ExponentialParams& e) {
  auto order = subset_order(static_cast<int>(e.beta.size()), kHardMaxDimension);
  std::vector<Complex> diag;
  diag.reserve(order.size());
  for (const auto& I : order) diag.push_back(homology_self_intersection(e, I));
  return {std::move(order), std::move(diag)};
}

// --- chain sums -------------------------------------------------------------------

template <class T>
ChainSumValue<T> a_coefficient(const BasicParameters<T>& p,
                               const MultiIndex& I) {
  require_same_m(p.m(), I);
  return {chain_sums(p, I.mask())[I.mask()], I};
}

template <class T>
ChainSumValue<T> a_coefficient_bruteforce(const BasicParameters<T>& p,
                                          const MultiIndex& I) {
  require_same_m(p.m(), I);
  if (I.size() > 8) {
    throw std::invalid_argument("flag enumeration is limited to |I| <= 8");
  }
  // A complete flag is the order in which the elements of I are added.
  std::vector<int> order = I.elements();
  T total = T(0);
  do {
    T term = one<T>();
    std::uint32_t mask = 0;
    for (int k : order) {
      mask |= 1u << (k - 1);
      term /= level_denominator(p, mask);
    }
    total += term;
  } while (std::next_permutation(order.begin(), order.end()));
  return {total, I};
}

template <class T>
std::vector<T> a_coefficient_table(const BasicParameters<T>& p) {
  return chain_sums(p, (1u << p.m()) - 1u);
}

// --- cohomology -------------------------------------------------------------------

int delta_indicator(const MultiIndex& I, const MultiIndex& Ip, int n) {
  return I.contains(n) == Ip.contains(n) ? 1 : 0;
}

template <class T>
T b_tilde(const BasicParameters<T>& p, const MultiIndex& I, int n) {
  require_same_m(p.m(), I);
  if (I.contains(n)) return p.c(n) - p.b(n) - T(1);
  return p.b(n);
}

namespace {

template <class T>
T pair_value(const BasicParameters<T>& p, const std::vector<T>& chain,
             const MultiIndex& I, const MultiIndex& Ip) {
  const int m = p.m();
  std::vector<T> inverse_b(m);
  for (int n = 1; n <= m; ++n) {
    const T bt = b_tilde(p, I, n);
    if (vanishes(bt)) {
      throw ResonanceError("btilde_" + I.to_string() + "(" +
                           std::to_string(n) + ") vanishes");
    }
    inverse_b[n - 1] = one<T>() / bt;
  }
  // Terms with some n outside N and delta(n) = 0 vanish: N must contain the
  // symmetric difference of I and I'.
  const std::uint32_t full = (1u << m) - 1u;
  const std::uint32_t required = I.mask() ^ Ip.mask();
  T total = T(0);
  for (std::uint32_t N = 0; N <= full; ++N) {
    if ((N & required) != required) continue;
    T term = chain[N];
    for (int n = 0; n < m; ++n) {
      if (!((N >> n) & 1u)) term *= inverse_b[n];
    }
    total += term;
  }
  return total;
}

}  // namespace

template <class T>
T cohomology_intersection(const BasicParameters<T>& p, const MultiIndex& I,
                          const MultiIndex& Ip) {
  require_same_m(p.m(), I);
  require_same_m(p.m(), Ip);
  return pair_value(p, a_coefficient_table(p), I, Ip);
}

template <class T>
CohomologyIntersectionMatrix<T>::CohomologyIntersectionMatrix(
    std::vector<MultiIndex> order, std::vector<T> entries)
    : order_(std::move(order)), entries_(std::move(entries)) {
  if (entries_.size() != order_.size() * order_.size()) {
    throw std::invalid_argument("matrix entries do not match basis size");
  }
}

template <class T>
CohomologyIntersectionMatrix<T> cohomology_intersection_matrix(
    const BasicParameters<T>& p) {
  auto order = subset_order(p.m(), kHardMaxDimension);
  const auto chain = a_coefficient_table(p);
  std::vector<T> entries;
  entries.reserve(order.size() * order.size());
  for (const auto& I : order) {
    for (const auto& Ip : order) entries.push_back(pair_value(p, chain, I, Ip));
  }
  return {std::move(order), std::move(entries)};
}

Complex determinant(const CohomologyIntersectionMatrix<Complex>& matrix) {
  const auto n = static_cast<Eigen::Index>(matrix.dimension());
  Eigen::MatrixXcd dense(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dense(i, j) = matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return dense.partialPivLu().determinant();
}

#define FA_TWIST_INSTANTIATE(T)                                                \
  template ChainSumValue<T> a_coefficient(const BasicParameters<T>&,           \
                                          const MultiIndex&);                  \
  template ChainSumValue<T> a_coefficient_bruteforce(const BasicParameters<T>&, \
                                                     const MultiIndex&);       \
  template std::vector<T> a_coefficient_table(const BasicParameters<T>&);      \
  template T b_tilde(const BasicParameters<T>&, const MultiIndex&, int);       \
  template T cohomology_intersection(const BasicParameters<T>&,                \
                                     const MultiIndex&, const MultiIndex&);    \
  template class CohomologyIntersectionMatrix<T>;                              \
  template CohomologyIntersectionMatrix<T> cohomology_intersection_matrix(     \
      const BasicParameters<T>&);

FA_TWIST_INSTANTIATE(Complex)
FA_TWIST_INSTANTIATE(Rational)

#undef FA_TWIST_INSTANTIATE

template ChainSumValue<ExtendedComplex> a_coefficient(const ExtendedParameters&,
                                                      const MultiIndex&);
template std::vector<ExtendedComplex> a_coefficient_table(const ExtendedParameters&);

}  // namespace fa_twist
