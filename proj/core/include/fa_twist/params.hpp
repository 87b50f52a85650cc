#pragma once

// Parameter sets (a, b, c) of Lauricella's F_A, subset indices I of the
// local-solution basis and the parameter shifts between basis elements.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fa_twist {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;
/// Extended-precision scalar for residual checks that must resolve errors
/// below double rounding.
using ExtendedComplex = std::complex<long double>;

inline constexpr int kDefaultMaxDimension = 6;
inline constexpr int kHardMaxDimension = 16;
inline constexpr double kDefaultIntegralityTolerance = 1e-9;
/// Distance to Z below which validate() emits a conditioning warning.
inline constexpr double kConditioningWarningDistance = 1e-6;

/// (a, b_1..b_m, c_1..c_m). T is Complex for numerics or Rational for the
/// exact intersection-number mode.
template <class T>
class BasicParameters {
 public:
  BasicParameters(T a, std::vector<T> b, std::vector<T> c,
                  int max_dimension = kDefaultMaxDimension);

  const T& a() const { return a_; }
  std::span<const T> b() const { return b_; }
  std::span<const T> c() const { return c_; }
  const T& b(int k) const { return b_.at(static_cast<std::size_t>(k - 1)); }
  const T& c(int k) const { return c_.at(static_cast<std::size_t>(k - 1)); }
  int m() const { return static_cast<int>(b_.size()); }

  friend bool operator==(const BasicParameters&, const BasicParameters&) = default;

 private:
  T a_;
  std::vector<T> b_;
  std::vector<T> c_;
};

using Parameters = BasicParameters<Complex>;
using ExactParameters = BasicParameters<Rational>;
using ExtendedParameters = BasicParameters<ExtendedComplex>;

/// Converts real parameters to exact dyadic rationals. Throws
/// ValidationError if any parameter has a nonzero imaginary part.
ExactParameters to_exact(const Parameters& p);

/// Widens every parameter to long double; exact.
ExtendedParameters to_extended(const Parameters& p);

/// A subset I of {1..m}, stored as a bitmask (bit k-1 set iff k in I).
class MultiIndex {
 public:
  MultiIndex() = default;
  static MultiIndex from_mask(std::uint32_t mask, int m);
  /// `elements` are 1-based, strictly increasing.
  static MultiIndex from_elements(std::span<const int> elements, int m);
  static MultiIndex empty(int m) { return from_mask(0, m); }
  static MultiIndex full(int m) { return from_mask((1u << m) - 1u, m); }

  std::uint32_t mask() const { return mask_; }
  int m() const { return m_; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(int k) const;
  std::vector<int> elements() const;
  MultiIndex complement() const;
  MultiIndex without(int k) const;
  bool is_subset_of(const MultiIndex& other) const {
    return (mask_ & ~other.mask_) == 0;
  }
  /// "{1,3}"; the empty set prints as "{}".
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  MultiIndex(std::uint32_t mask, int m) : mask_(mask), m_(m) {}
  std::uint32_t mask_ = 0;
  int m_ = 0;
};

/// Parameters (a_I, b^I, c^I) of the local solution f_I.
struct ShiftedParameters {
  Parameters base;
  MultiIndex index;
  Complex a_I;
  std::vector<Complex> bI;
  std::vector<Complex> cI;

  Parameters as_parameters() const;
};

struct ExponentialParams {
  Complex alpha;
  std::vector<Complex> beta;
  std::vector<Complex> gamma;
};

struct Violation {
  std::string condition;  ///< "b_k", "c_k-b_k", "c_k" or "a-sum(c_I)"
  MultiIndex indices;     ///< {k} for per-coordinate conditions, I otherwise
  Complex value;

  /// e.g. "b_1 integral", "a-c_1-c_2 integral".
  std::string describe() const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  /// Quantities that pass but sit within kConditioningWarningDistance of Z.
  std::vector<std::string> warnings;
};

/// True when |Im z| < eps and Re z is within eps of an integer.
bool is_near_integer(const Complex& z, double eps);

/// Irreducibility check: b_k, c_k - b_k, c_k and a - sum_{i in I} c_i
/// (every I, including the empty set) must all be non-integral.
ValidationReport validate(const Parameters& p,
                          double eps_int = kDefaultIntegralityTolerance);

ShiftedParameters shifted_parameters(const Parameters& p, const MultiIndex& I);

/// (a, b, c) -> (-a, -b, 2 - c): the parameters of the dual weight 1/u.
Parameters dual_parameters(const Parameters& p);

ExponentialParams exponential_params(const Parameters& p);

/// All 2^m subsets in increasing bitmask order. This is the basis order of
/// every matrix the library produces.
std::vector<MultiIndex> subset_order(int m,
                                     int max_dimension = kDefaultMaxDimension);

}  // namespace fa_twist
