#pragma once

// Truncated power series of F_A and of the local solutions f_I.
//
// Truncation is by total degree: order N keeps every multi-degree
// (n_1..n_m) with n_1 + ... + n_m <= N. Terms are visited shell by shell
// (increasing total degree), lexicographically ascending inside a shell.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fa_twist/params.hpp"

namespace fa_twist {

/// A point x of C^m inside the convergence domain sum |x_k| < 1.
class EvaluationPoint {
 public:
  /// Throws DomainError unless x is nonempty and sum |x_k| < 1.
  explicit EvaluationPoint(std::vector<Complex> x);
  static EvaluationPoint real(std::span<const double> x);

  std::span<const Complex> x() const { return x_; }
  const Complex& x(int k) const { return x_.at(static_cast<std::size_t>(k - 1)); }
  int m() const { return static_cast<int>(x_.size()); }
  double l1_norm() const;
  bool is_real() const;

 private:
  std::vector<Complex> x_;
};

struct SeriesValue {
  Complex value;
  int order = 0;
  std::optional<double> tail_bound;
  std::size_t terms = 0;
};

/// Enumeration of the multi-degrees of total degree <= N in evaluation
/// order, with O(m) ranking and a predecessor link per entry (the entry
/// minus e_k, k being the last nonzero coordinate).
class DegreeLattice {
 public:
  DegreeLattice(int m, int order);

  int m() const { return m_; }
  int order() const { return order_; }
  std::size_t size() const { return predecessor_.size(); }

  std::span<const std::uint16_t> degrees(std::size_t i) const {
    return {degrees_.data() + i * static_cast<std::size_t>(m_),
            static_cast<std::size_t>(m_)};
  }
  int total_degree(std::size_t i) const { return total_[i]; }
  std::size_t predecessor(std::size_t i) const { return predecessor_[i]; }
  /// 0-based coordinate k with degrees(i) = degrees(predecessor(i)) + e_k.
  int direction(std::size_t i) const { return direction_[i]; }

  /// Position of a multi-degree; requires total degree <= order().
  std::size_t rank(std::span<const int> degrees) const;

 private:
  std::uint64_t binom(int n, int k) const;

  int m_;
  int order_;
  std::vector<std::uint64_t> binom_;  // (order + m + 2) x (m + 1)
  std::vector<std::uint16_t> degrees_;
  std::vector<std::uint16_t> total_;
  std::vector<std::size_t> predecessor_;
  std::vector<std::int8_t> direction_;
};

/// Coefficients A_n of F_A(a, b, c; x) for every multi-degree of total
/// degree <= N. A_0 = 1.
class CoefficientTable {
 public:
  CoefficientTable(std::shared_ptr<const DegreeLattice> lattice,
                   std::vector<Complex> coefficients);

  const DegreeLattice& lattice() const { return *lattice_; }
  int m() const { return lattice_->m(); }
  int order() const { return lattice_->order(); }
  std::size_t size() const { return coefficients_.size(); }

  std::span<const Complex> coefficients() const { return coefficients_; }
  const Complex& operator[](std::size_t i) const { return coefficients_[i]; }
  Complex& operator[](std::size_t i) { return coefficients_[i]; }
  const Complex& at(std::span<const int> degrees) const {
    return coefficients_[lattice_->rank(degrees)];
  }

 private:
  std::shared_ptr<const DegreeLattice> lattice_;
  std::vector<Complex> coefficients_;
};

/// Builds A_n by the one-step recurrence
///   A_{n+e_k} = A_n (a + |n|)(b_k + n_k) / ((c_k + n_k)(n_k + 1)).
/// Throws PoleError if some c_k + n_k vanishes (|.| < 1e-12).
CoefficientTable fa_coefficients(const Parameters& p, int order);

/// Partial sum of F_A(a, b, c; x) through total degree `order`, with
/// compensated accumulation. Throws DomainError on dimension mismatch.
SeriesValue fa_eval(const Parameters& p, const EvaluationPoint& x, int order);

/// Same, reusing a prebuilt coefficient table (truncated at table.order()).
SeriesValue fa_eval(const Parameters& p, const CoefficientTable& table,
                    const EvaluationPoint& x);

/// Partial sum through total degree `order` with coefficients, monomials
/// and accumulation all in long double.
ExtendedComplex fa_eval_extended(const ExtendedParameters& p,
                                 const EvaluationPoint& x, int order);

/// f_I(x) = prod_{i in I} x_i^{1 - c_i} * F_A(a_I, b^I, c^I; x) with the
/// principal power. x must be real, and positive on the coordinates in I;
/// otherwise BranchError.
SeriesValue local_solution_eval(const Parameters& p, const MultiIndex& I,
                                const EvaluationPoint& x, int order);

/// Max over k and all n with |n| <= order of
///   |A_{n+e_k}(c_k + n_k)(n_k + 1) - A_n(a + |n|)(b_k + n_k)| / (1 + |A_n|),
/// i.e. how far the table is from satisfying the coefficient identities
/// that encode annihilation by the E_A operators. `table` must reach
/// total degree order + 1.
double recurrence_residual(const Parameters& p, const CoefficientTable& table,
                           int order);

/// recurrence_residual on a freshly built table of order + 1.
double coefficient_recurrence_residual(const Parameters& p, int order);

/// Bound on |F_A - partial sum through degree N|, from the geometric
/// majorant
///
///   U_d = |(a)_d| / d! * prod_k max_{n<=d} |(b_k)_n / (c_k)_n| * s^d,
///   s   = sum_k |x_k|,
///
/// which dominates the degree-d shell sum. For d >= N,
///   U_{d+1} / U_d <= rho = s * max(1, (|a|+N)/(N+1))
///                          * prod_k max(1, (|b_k|+N)/(N-|c_k|)),
/// so the tail is at most U_N rho / (1 - rho). Returns nullopt when
/// rho >= 1 or N <= |c_k| for some k (the majorant is then not certified).
std::optional<double> fa_tail_bound(const Parameters& p,
                                    const EvaluationPoint& x, int order);

}  // namespace fa_twist
