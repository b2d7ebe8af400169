#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cornerext {

/// Order-N truncated Taylor jet of a scalar function at a base point.
///
/// Coefficients are Taylor-normalized: coeffs()[k] = f^(k)(base)/k!.
/// This keeps products and compositions well conditioned; raw derivatives
/// are available through deriv(). Jets are immutable value types and safe
/// to share across threads.
class Jet1 {
 public:
  Jet1() = default;
  Jet1(double base, int order);                          // zero jet
  Jet1(double base, std::vector<double> coeffs);         // explicit coefficients

  double base() const { return base_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  double value() const { return c_[0]; }
  double coeff(int k) const { return c_[static_cast<std::size_t>(k)]; }
  double deriv(int k) const;                             // raw k-th derivative
  const std::vector<double>& coeffs() const { return c_; }
  bool finite() const;

 private:
  double base_ = 0.0;
  std::vector<double> c_{0.0};
};

// Arithmetic. Binary operations require equal base points and orders;
// violations throw std::invalid_argument.
Jet1 jet_add(const Jet1& a, const Jet1& b);
Jet1 jet_sub(const Jet1& a, const Jet1& b);
Jet1 jet_scale(const Jet1& a, double s);
Jet1 jet_shift(const Jet1& a, double s);                 // a + const
Jet1 jet_neg(const Jet1& a);
Jet1 jet_mul(const Jet1& a, const Jet1& b);              // truncated Cauchy product
Jet1 jet_pow(const Jet1& a, int k);                      // k >= 0
Jet1 jet_recip(const Jet1& a);                           // 1/a, a.value() != 0

/// Truncated composition (Faa di Bruno, realized as Horner evaluation of the
/// outer polynomial in the zero-constant part of the inner jet). The outer
/// jet must be based at the inner jet's value, within a small tolerance.
Jet1 jet_compose(const Jet1& outer, const Jet1& inner);

/// Identity jet of the coordinate x at a point.
Jet1 jet_variable(double x, int order);
Jet1 jet_constant(double base, double value, int order);

enum class Elementary { kExp, kSin, kCos, kReciprocal };

/// Exact Taylor coefficients of a named elementary function at a point.
/// kReciprocal requires a nonzero point and throws std::domain_error at 0.
Jet1 elementary_jet(Elementary f, double x, int order);

/// Jet of a polynomial sum c[i] x^i at a point (finite, exact expansion).
Jet1 polynomial_jet(std::span<const double> poly, double x, int order);

// Internal analytic helpers used by chart families.
Jet1 sqrt_jet(double x, int order);                      // x > 0
Jet1 atan_jet(double x, int order);

/// Smooth step s with s = 0 on (-inf,0], s = 1 on [1,inf), strictly
/// increasing in between, built from h(t) = exp(-1/t):
///     s(t) = h(t) / (h(t) + h(1-t)).
/// All derivatives vanish at t = 0 and t = 1, so the branch dispatch below
/// produces the exact jets of the globally smooth function.
Jet1 smooth_step_jet(double t, int order);

/// Order-N jet at x of the fixed cutoff zeta: supp(zeta) in [-1,1],
/// zeta == 1 on [-1/2,1/2], values in [0,1]; on the transition
/// zeta(x) = s(2(1-|x|)).
Jet1 bump_zeta_jet(double x, int order);

/// Jet of xi(x) = x * zeta(x); xi == identity on [-1/2,1/2], supp in [-1,1].
Jet1 xi_jet(double x, int order);

/// Jet of xi(x)^k, computed via jet_mul. k = 0 gives the unit jet.
Jet1 xi_power_jet(int k, double x, int order);

}  // namespace cornerext
