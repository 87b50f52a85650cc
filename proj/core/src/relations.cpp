#include "fa_twist/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fa_twist/errors.hpp"
#include "fa_twist/euler_oracle.hpp"
#include "fa_twist/intersection.hpp"
#include "fa_twist/numerics.hpp"

namespace fa_twist {

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::kFirst:
      return "i";
    case Relation::kSecond:
      return "ii";
    case Relation::kAssembledFirst:
      return "assembled-i";
  }
  return "?";
}

Relation relation_from_string(std::string_view name) {
  if (name == "i") return Relation::kFirst;
  if (name == "ii") return Relation::kSecond;
  if (name == "assembled-i") return Relation::kAssembledFirst;
  throw std::invalid_argument("unknown relation '" + std::string(name) +
                              "' (expected i, ii or assembled-i)");
}

namespace {

bool vanishes(const Complex& z) { return std::abs(z) < kResonanceThreshold; }
bool vanishes(const Rational& q) { return q == 0; }
bool vanishes(const ExtendedComplex& z) { return std::abs(z) < kResonanceThreshold; }

template <class T>
void require_nonzero_a(const BasicParameters<T>& p) {
  if (vanishes(p.a())) throw ResonanceError("a vanishes");
}

Complex shifted_a(const Parameters& p, const MultiIndex& I) {
  Complex aI = p.a() + static_cast<double>(I.size());
  for (int k : I.elements()) aI -= p.c(k);
  if (vanishes(aI)) {
    throw ResonanceError("a_I vanishes for I=" + I.to_string());
  }
  return aI;
}

// Accumulates weight * F * G in long double with Neumaier compensation, and
// the propagated truncation bound |w| (|F| tG + |G| tF + tF tG).
class QuadraticSum {
 public:
  void add(const ExtendedComplex& weight, const ExtendedComplex& f,
           std::optional<double> f_bound, const ExtendedComplex& g,
           std::optional<double> g_bound) {
    const ExtendedComplex term = weight * f * g;
    accumulate(0, term.real());
    accumulate(1, term.imag());
    if (bounded_ && f_bound && g_bound) {
      bound_ += static_cast<double>(std::abs(weight)) *
                (static_cast<double>(std::abs(f)) * *g_bound +
                 static_cast<double>(std::abs(g)) * *f_bound + *f_bound * *g_bound);
    } else {
      bounded_ = false;
    }
  }
  void add(const Complex& weight, const SeriesValue& f, const SeriesValue& g) {
    add(weight, f.value, f.tail_bound, g.value, g.tail_bound);
  }
  ExtendedComplex value() const { return {sum_[0] + comp_[0], sum_[1] + comp_[1]}; }
  std::optional<double> bound() const {
    return bounded_ ? std::optional<double>(bound_) : std::nullopt;
  }

 private:
  void accumulate(int part, long double v) {
    const long double t = sum_[part] + v;
    comp_[part] += std::fabs(sum_[part]) >= std::fabs(v) ? (sum_[part] - t) + v
                                                         : (v - t) + sum_[part];
    sum_[part] = t;
  }

  long double sum_[2] = {0.0L, 0.0L};
  long double comp_[2] = {0.0L, 0.0L};
  double bound_ = 0.0;
  bool bounded_ = true;
};

// The two parameter sets paired in the reduced relations, in long double,
// plus the double-precision first/second sets for the tail bounds.
struct ReducedPair {
  ExtendedParameters first;
  ExtendedParameters second;
  ExtendedComplex a_I;
  std::optional<double> first_bound;
  std::optional<double> second_bound;
};

ReducedPair reduced_pair(const Parameters& p, const MultiIndex& I,
                         const EvaluationPoint& x, int order, bool negate_b) {
  shifted_a(p, I);
  const auto pe = to_extended(p);
  const int m = p.m();
  ExtendedComplex aI = pe.a() + static_cast<long double>(I.size());
  std::vector<ExtendedComplex> b1(m), c1(m), b2(m), c2(m);
  std::vector<Complex> db2(m), dc2(m);
  for (int k = 1; k <= m; ++k) {
    const std::size_t j = static_cast<std::size_t>(k - 1);
    if (I.contains(k)) {
      aI -= pe.c(k);
      b1[j] = pe.b(k) - pe.c(k) + 1.0L;
      c1[j] = 2.0L - pe.c(k);
    } else {
      b1[j] = pe.b(k);
      c1[j] = pe.c(k);
    }
    b2[j] = negate_b ? -b1[j] : 1.0L - b1[j];
    c2[j] = 2.0L - c1[j];
    db2[j] = Complex(b2[j]);
    dc2[j] = Complex(c2[j]);
  }
  const auto s = shifted_parameters(p, I);
  const Parameters first_d = s.as_parameters();
  const Parameters second_d(-s.a_I, std::move(db2), std::move(dc2), kHardMaxDimension);
  return {ExtendedParameters(aI, std::move(b1), std::move(c1), kHardMaxDimension),
          ExtendedParameters(-aI, std::move(b2), std::move(c2), kHardMaxDimension),
          aI,
          fa_tail_bound(first_d, x, order),
          fa_tail_bound(second_d, x, order)};
}

void add_pair(QuadraticSum& sum, const ExtendedComplex& weight,
              const ReducedPair& pair, const EvaluationPoint& x, int order) {
  sum.add(weight, fa_eval_extended(pair.first, x, order), pair.first_bound,
          fa_eval_extended(pair.second, x, order), pair.second_bound);
}

QuadraticSum rhs_i(const Parameters& p, const EvaluationPoint& x, int order) {
  const auto pe = to_extended(p);
  QuadraticSum sum;
  for (const auto& I : subset_order(p.m(), kHardMaxDimension)) {
    const auto pair = reduced_pair(p, I, x, order, /*negate_b=*/true);
    ExtendedComplex weight = 1.0L / pair.a_I;
    for (int j : I.complement().elements()) {
      weight *= (pe.c(j) - pe.b(j) - 1.0L) / pe.b(j);
    }
    add_pair(sum, weight, pair, x, order);
  }
  return sum;
}

QuadraticSum rhs_ii(const Parameters& p, const EvaluationPoint& x, int order) {
  QuadraticSum sum;
  for (const auto& I : subset_order(p.m(), kHardMaxDimension)) {
    const auto pair = reduced_pair(p, I, x, order, /*negate_b=*/false);
    const long double sign = I.size() % 2 == 0 ? 1.0L : -1.0L;
    add_pair(sum, sign / pair.a_I, pair, x, order);
  }
  return sum;
}

QuadraticSum assembled_rhs_i(const Parameters& p, const EvaluationPoint& x,
                             int order) {
  const auto e = exponential_params(p);
  const auto dual = dual_parameters(p);
  QuadraticSum sum;
  for (const auto& N : subset_order(p.m(), kHardMaxDimension)) {
    const auto g = cycle_integral_value(p, N, x, order);
    const auto gd = cycle_integral_value(dual, N, x, order);
    const Complex weight = g.phase * gd.phase * g.gamma_factor *
                           gd.gamma_factor / homology_self_intersection(e, N);
    sum.add(weight, g.fa_part, gd.fa_part);
  }
  return sum;
}

void require_positive_real(const Parameters& p, const EvaluationPoint& x) {
  if (x.m() != p.m()) throw DomainError("evaluation point dimension mismatch");
  for (int k = 1; k <= x.m(); ++k) {
    const Complex v = x.x(k);
    if (v.imag() != 0.0 || !(v.real() > 0.0)) {
      throw DomainError("period relations are checked at real x with x_k > 0; x_" +
                        std::to_string(k) + " is not");
    }
  }
}

}  // namespace

template <class T>
T tpr_lhs_i(const BasicParameters<T>& p) {
  require_nonzero_a(p);
  const auto chain = a_coefficient_table(p);
  const int m = p.m();
  T sum = T(0);
  for (std::uint32_t mask = 0; mask < chain.size(); ++mask) {
    T term = chain[mask];
    for (int k = 0; k < m; ++k) {
      if (!((mask >> k) & 1u)) term /= p.b()[k];
    }
    sum += term;
  }
  T factor = T(1) / p.a();
  for (int k = 0; k < m; ++k) factor *= p.c()[k] - T(1);
  return factor * sum;
}

template <class T>
T tpr_lhs_ii(const BasicParameters<T>& p) {
  require_nonzero_a(p);
  T factor = T(1) / p.a();
  for (int k = 0; k < p.m(); ++k) factor *= T(1) - p.c()[k];
  return factor * a_coefficient(p, MultiIndex::full(p.m())).value;
}

template Complex tpr_lhs_i(const Parameters&);
template Rational tpr_lhs_i(const ExactParameters&);
template Complex tpr_lhs_ii(const Parameters&);
template Rational tpr_lhs_ii(const ExactParameters&);
template ExtendedComplex tpr_lhs_i(const ExtendedParameters&);
template ExtendedComplex tpr_lhs_ii(const ExtendedParameters&);

Complex tpr_rhs_i(const Parameters& p, const EvaluationPoint& x, int order) {
  return Complex(rhs_i(p, x, order).value());
}

Complex tpr_rhs_ii(const Parameters& p, const EvaluationPoint& x, int order) {
  return Complex(rhs_ii(p, x, order).value());
}

Complex g_value(const Parameters& p, const MultiIndex& N,
                const EvaluationPoint& x, int order) {
  return cycle_integral_value(p, N, x, order).value;
}

Complex g_dual_value(const Parameters& p, const MultiIndex& N,
                     const EvaluationPoint& x, int order) {
  return cycle_integral_value(dual_parameters(p), N, x, order).value;
}

Complex g_pair_product(const Parameters& p, const MultiIndex& N,
                       const EvaluationPoint& x, int order) {
  const auto g = cycle_integral_value(p, N, x, order);
  const auto gd = cycle_integral_value(dual_parameters(p), N, x, order);
  return g.phase * gd.phase * g.gamma_factor * gd.gamma_factor *
         g.fa_part.value * gd.fa_part.value;
}

TprReport tpr_check(const Parameters& p, const EvaluationPoint& x, int order,
                    Relation relation) {
  const auto report = validate(p);
  if (!report.ok) {
    std::string message = "parameters fail irreducibility:";
    for (const auto& v : report.violations) message += " " + v.describe() + ";";
    message.pop_back();
    throw ValidationError(message);
  }
  require_positive_real(p, x);

  ExtendedComplex lhs;
  QuadraticSum rhs;
  switch (relation) {
    case Relation::kFirst:
      lhs = tpr_lhs_i(to_extended(p));
      rhs = rhs_i(p, x, order);
      break;
    case Relation::kSecond:
      lhs = tpr_lhs_ii(to_extended(p));
      rhs = rhs_ii(p, x, order);
      break;
    case Relation::kAssembledFirst: {
      const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
      lhs = std::pow(two_pi_i, p.m()) *
            cohomology_intersection(p, MultiIndex::empty(p.m()),
                                    MultiIndex::empty(p.m()));
      rhs = assembled_rhs_i(p, x, order);
      break;
    }
  }
  // Residuals are formed before rounding lhs and rhs to double.
  const auto abs_residual = static_cast<double>(std::abs(lhs - rhs.value()));
  const double scale = std::max({static_cast<double>(std::abs(lhs)),
                                 static_cast<double>(std::abs(rhs.value())), 1e-300});
  return TprReport{relation,
                   Complex(lhs),
                   Complex(rhs.value()),
                   abs_residual,
                   abs_residual / scale,
                   order,
                   x,
                   rhs.bound()};
}

}  // namespace fa_twist
