#include "cornerext/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cornerext {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_same_frame(const Jet1& a, const Jet1& b) {
  require(a.order() == b.order(), "jet order mismatch");
  require(a.base() == b.base(), "jet base point mismatch");
}

}  // namespace

Jet1::Jet1(double base, int order) : base_(base) {
  if (order < 0) throw std::invalid_argument("jet order must be >= 0");
  c_.assign(static_cast<std::size_t>(order) + 1, 0.0);
}

Jet1::Jet1(double base, std::vector<double> coeffs) : base_(base), c_(std::move(coeffs)) {
  if (c_.empty()) throw std::invalid_argument("jet needs at least the order-0 coefficient");
}

double Jet1::deriv(int k) const {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return c_[static_cast<std::size_t>(k)] * f;
}

bool Jet1::finite() const {
  for (double v : c_)
    if (!std::isfinite(v)) return false;
  return true;
}

Jet1 jet_add(const Jet1& a, const Jet1& b) {
  check_same_frame(a, b);
  std::vector<double> c(a.coeffs());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
  return Jet1(a.base(), std::move(c));
}

Jet1 jet_sub(const Jet1& a, const Jet1& b) {
  check_same_frame(a, b);
  std::vector<double> c(a.coeffs());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs()[i];
  return Jet1(a.base(), std::move(c));
}

Jet1 jet_scale(const Jet1& a, double s) {
  std::vector<double> c(a.coeffs());
  for (double& v : c) v *= s;
  return Jet1(a.base(), std::move(c));
}

Jet1 jet_shift(const Jet1& a, double s) {
  std::vector<double> c(a.coeffs());
  c[0] += s;
  return Jet1(a.base(), std::move(c));
}

Jet1 jet_neg(const Jet1& a) { return jet_scale(a, -1.0); }

Jet1 jet_mul(const Jet1& a, const Jet1& b) {
  check_same_frame(a, b);
  const int n = a.order();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    const double ai = a.coeff(i);
    if (ai == 0.0) continue;
    for (int j = 0; j + i <= n; ++j) c[static_cast<std::size_t>(i + j)] += ai * b.coeff(j);
  }
  return Jet1(a.base(), std::move(c));
}

Jet1 jet_pow(const Jet1& a, int k) {
  require(k >= 0, "jet_pow needs k >= 0");
  Jet1 r = jet_constant(a.base(), 1.0, a.order());
  for (int i = 0; i < k; ++i) r = jet_mul(r, a);
  return r;
}

Jet1 jet_recip(const Jet1& a) {
  if (a.value() == 0.0) throw std::domain_error("jet_recip at a zero value");
  const int n = a.order();
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[0] = 1.0 / a.value();
  for (int i = 1; i <= n; ++i) {
    double s = 0.0;
    for (int j = 1; j <= i; ++j) s += a.coeff(j) * c[static_cast<std::size_t>(i - j)];
    c[static_cast<std::size_t>(i)] = -s / a.value();
  }
  return Jet1(a.base(), std::move(c));
}

Jet1 jet_compose(const Jet1& outer, const Jet1& inner) {
  require(outer.order() == inner.order(), "jet order mismatch");
  const double tol = 1e-9 * std::max(1.0, std::abs(inner.value()));
  require(std::abs(outer.base() - inner.value()) <= tol,
          "jet_compose: outer base does not match inner value");
  // delta has zero constant term, so Horner in delta truncates exactly.
  std::vector<double> dc(inner.coeffs());
  dc[0] = 0.0;
  const Jet1 delta(inner.base(), std::move(dc));
  const int n = outer.order();
  Jet1 r = jet_constant(inner.base(), outer.coeff(n), n);
  for (int j = n - 1; j >= 0; --j) r = jet_shift(jet_mul(r, delta), outer.coeff(j));
  return r;
}

Jet1 jet_variable(double x, int order) {
  Jet1 j(x, order);
  std::vector<double> c(j.coeffs());
  c[0] = x;
  if (order >= 1) c[1] = 1.0;
  return Jet1(x, std::move(c));
}

Jet1 jet_constant(double base, double value, int order) {
  Jet1 j(base, order);
  std::vector<double> c(j.coeffs());
  c[0] = value;
  return Jet1(base, std::move(c));
}

Jet1 elementary_jet(Elementary f, double x, int order) {
  const std::size_t n = static_cast<std::size_t>(order);
  std::vector<double> c(n + 1, 0.0);
  switch (f) {
    case Elementary::kExp: {
      const double e = std::exp(x);
      double fact = 1.0;
      for (std::size_t k = 0; k <= n; ++k) {
        c[k] = e / fact;
        fact *= static_cast<double>(k + 1);
      }
      break;
    }
    case Elementary::kSin: {
      const double table[4] = {std::sin(x), std::cos(x), -std::sin(x), -std::cos(x)};
      double fact = 1.0;
      for (std::size_t k = 0; k <= n; ++k) {
        c[k] = table[k % 4] / fact;
        fact *= static_cast<double>(k + 1);
      }
      break;
    }
    case Elementary::kCos: {
      const double table[4] = {std::cos(x), -std::sin(x), -std::cos(x), std::sin(x)};
      double fact = 1.0;
      for (std::size_t k = 0; k <= n; ++k) {
        c[k] = table[k % 4] / fact;
        fact *= static_cast<double>(k + 1);
      }
      break;
    }
    case Elementary::kReciprocal: {
      if (x == 0.0) throw std::domain_error("reciprocal jet at 0");
      // 1/x at x0: coeffs (-1)^k / x0^(k+1)
      double p = 1.0 / x;
      for (std::size_t k = 0; k <= n; ++k) {
        c[k] = p;
        p *= -1.0 / x;
      }
      break;
    }
  }
  return Jet1(x, std::move(c));
}

Jet1 polynomial_jet(std::span<const double> poly, double x, int order) {
  // Horner evaluation in jet arithmetic; exact up to rounding.
  Jet1 r = jet_constant(x, poly.empty() ? 0.0 : poly.back(), order);
  const Jet1 xv = jet_variable(x, order);
  for (std::size_t i = poly.size(); i-- > 1;) r = jet_shift(jet_mul(r, xv), poly[i - 1]);
  return r;
}

Jet1 sqrt_jet(double x, int order) {
  if (!(x > 0.0)) throw std::domain_error("sqrt jet needs x > 0");
  const std::size_t n = static_cast<std::size_t>(order);
  std::vector<double> c(n + 1, 0.0);
  // binomial series: coeff_k = C(1/2, k) x^(1/2-k)
  double binom = 1.0;
  double p = std::sqrt(x);
  for (std::size_t k = 0; k <= n; ++k) {
    c[k] = binom * p;
    binom *= (0.5 - static_cast<double>(k)) / static_cast<double>(k + 1);
    p /= x;
  }
  return Jet1(x, std::move(c));
}

Jet1 atan_jet(double x, int order) {
  // Integrate the jet of 1/(1+x^2).
  const double q[3] = {1.0, 0.0, 1.0};
  const Jet1 den = polynomial_jet(std::span<const double>(q, 3), x, std::max(0, order - 1));
  const Jet1 dj = jet_recip(den);
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = std::atan(x);
  for (int k = 1; k <= order; ++k) c[static_cast<std::size_t>(k)] = dj.coeff(k - 1) / k;
  return Jet1(x, std::move(c));
}

namespace {

// exp(-1/t) for t > 0, as a jet.
Jet1 h_jet(const Jet1& t) {
  const Jet1 inv = jet_recip(t);
  const Jet1 outer = elementary_jet(Elementary::kExp, -inv.value(), t.order());
  return jet_compose(outer, jet_neg(inv));
}

}  // namespace

Jet1 smooth_step_jet(double t, int order) {
  // within 1e-12 of the ends the step differs from its flat branches by
  // less than exp(-1e12); branching there avoids overflow in 1/t powers
  if (t <= 1e-12) return Jet1(t, order);  // identically 0, flat
  if (t >= 1.0 - 1e-12) return jet_constant(t, 1.0, order);
  const Jet1 tv = jet_variable(t, order);
  const Jet1 ht = h_jet(tv);
  const Jet1 h1t = h_jet(jet_shift(jet_neg(tv), 1.0));
  const Jet1 den = jet_add(ht, h1t);
  return jet_mul(ht, jet_recip(den));
}

Jet1 bump_zeta_jet(double x, int order) {
  const double ax = std::abs(x);
  if (ax <= 0.5) return jet_constant(x, 1.0, order);
  if (ax >= 1.0) return Jet1(x, order);
  // zeta(x) = s(2(1-|x|)) on the transition; s is flat at both ends so the
  // plateau and support branches above carry the exact one-sided jets.
  const Jet1 xv = jet_variable(x, order);
  const Jet1 axv = (x > 0.0) ? xv : jet_neg(xv);
  const Jet1 arg = jet_scale(jet_shift(jet_neg(axv), 1.0), 2.0);
  return jet_compose(smooth_step_jet(arg.value(), order), arg);
}

Jet1 xi_jet(double x, int order) {
  return jet_mul(jet_variable(x, order), bump_zeta_jet(x, order));
}

Jet1 xi_power_jet(int k, double x, int order) {
  require(k >= 0, "xi_power_jet needs k >= 0");
  if (k == 0) return jet_constant(x, 1.0, order);
  return jet_pow(xi_jet(x, order), k);
}

}  // namespace cornerext
