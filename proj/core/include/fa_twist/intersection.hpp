#pragma once

// Closed-form intersection numbers.
//
// Homology: the cycles Delta_I are mutually orthogonal and the self
// intersections are products of one simplex factor and m - r interval
// factors in the exponentials alpha, beta_k, gamma_k.
//
// Cohomology: the forms phi^I pair through the chain sums A_N,
//   I_c(phi^I, phi^I') / (2 pi i)^m
//     = sum_{N} A_N prod_{n not in N} delta_{I,I'}(n) / btilde_I(n).
//
// Rational-valued operations are instantiated for Complex and for Rational
// (exact mode); the homology side needs exponentials and is Complex only.
// a_coefficient and a_coefficient_table also exist for ExtendedComplex.

#include <cstddef>
#include <vector>

#include "fa_twist/params.hpp"

namespace fa_twist {

/// Modulus below which a denominator counts as vanished.
inline constexpr double kResonanceThreshold = 1e-12;

/// I_h(Delta_I, Delta_I^vee)
///   = (alpha - prod_{i in I} gamma_i) / ((alpha - 1) prod_{i in I}(1 - gamma_i))
///     * prod_{j not in I} beta_j (1 - gamma_j) / ((1 - beta_j)(beta_j - gamma_j)).
/// Throws ResonanceError naming I when a denominator factor vanishes.
Complex homology_self_intersection(const ExponentialParams& e,
                                   const MultiIndex& I);

class HomologyIntersectionMatrix {
 public:
  HomologyIntersectionMatrix(std::vector<MultiIndex> order,
                             std::vector<Complex> diag);

  const std::vector<MultiIndex>& order() const { return order_; }
  const std::vector<Complex>& diag() const { return diag_; }
  /// Exactly zero off the diagonal.
  Complex entry(const MultiIndex& I, const MultiIndex& J) const;
  Complex determinant() const;

 private:
  std::vector<MultiIndex> order_;
  std::vector<Complex> diag_;
};

HomologyIntersectionMatrix homology_intersection_matrix(
    const ExponentialParams& e);

template <class T>
struct ChainSumValue {
  T value;
  MultiIndex subset;
};

/// A_I by the subset-lattice recursion
///   A_{} = 1,  A_I = (sum_{i in I} A_{I \ {i}}) / (a - sum_{i in I} c_i + |I|),
/// memoized over the subsets of I.
template <class T>
ChainSumValue<T> a_coefficient(const BasicParameters<T>& p,
                               const MultiIndex& I);

/// A_I as the sum over complete flags I^(1) < ... < I^(r) = I of
/// prod_l 1 / (a - sum_{i in I^(l)} c_i + l). Factorial cost; |I| <= 8.
template <class T>
ChainSumValue<T> a_coefficient_bruteforce(const BasicParameters<T>& p,
                                          const MultiIndex& I);

/// A_N for every N in subset_order(m), indexed by bitmask.
template <class T>
std::vector<T> a_coefficient_table(const BasicParameters<T>& p);

/// 1 iff n lies in both I and I' or in neither.
int delta_indicator(const MultiIndex& I, const MultiIndex& Ip, int n);

/// c_n - b_n - 1 for n in I, b_n otherwise.
template <class T>
T b_tilde(const BasicParameters<T>& p, const MultiIndex& I, int n);

/// I_c(phi^I, phi^I') / (2 pi i)^m.
template <class T>
T cohomology_intersection(const BasicParameters<T>& p, const MultiIndex& I,
                          const MultiIndex& Ip);

/// Entries are I_c / (2 pi i)^m; the (2 pi i)^m normalization is implied.
template <class T>
class CohomologyIntersectionMatrix {
 public:
  CohomologyIntersectionMatrix(std::vector<MultiIndex> order,
                               std::vector<T> entries);

  const std::vector<MultiIndex>& order() const { return order_; }
  std::size_t dimension() const { return order_.size(); }
  const T& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * order_.size() + col];
  }
  const T& entry(const MultiIndex& I, const MultiIndex& Ip) const {
    return (*this)(I.mask(), Ip.mask());
  }

 private:
  std::vector<MultiIndex> order_;
  std::vector<T> entries_;  // row-major
};

template <class T>
CohomologyIntersectionMatrix<T> cohomology_intersection_matrix(
    const BasicParameters<T>& p);

/// Determinant by LU with partial pivoting.
Complex determinant(const CohomologyIntersectionMatrix<Complex>& matrix);

}  // namespace fa_twist
