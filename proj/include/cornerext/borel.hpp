#pragma once

#include <string>
#include <vector>

#include "cornerext/oracle.hpp"

namespace cornerext {

/// A prescribed finite jet at 0: values[k] is the raw k-th derivative the
/// realized function must take at the origin (componentwise for codomains
/// in R^s).
struct TargetJet {
  std::vector<Vec> values;  // k = 0..N, each of size codim

  int order() const { return static_cast<int>(values.size()) - 1; }
  int codim() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
  double sup_norm(int k) const;  // max-abs over components

  static TargetJet from_oracle(const JetOracle& f, double point, int order);
  static TargetJet scalar(std::vector<double> derivs);
};

/// The constants witnessing derivative-wise convergence of the cutoff
/// series: scales c_k > 1 (powers of two) and upper bounds
/// M_{n,k} >= sup |(xi^k)^(n)|, satisfying
///     |v_k| c_k^(n-k) M_{n,k} < 2^(-k)   for all n < k.
/// The seminorm chain collapses to the max-abs norm on R^s.
struct ScaleCertificate {
  std::vector<double> scales;                 // c_k, k = 0..N; c_0 unused (2)
  std::vector<double> target_norms;           // |v_k| (max-abs) the scales were chosen for
  std::vector<std::vector<double>> bounds;    // bounds[n][k] = M_{n,k}, n,k <= N
  std::string norm = "max-abs";

  int order() const { return static_cast<int>(scales.size()) - 1; }
};

/// Re-verifies the certificate inequality by direct substitution.
bool certificate_valid(const ScaleCertificate& cert);

/// Column M_{n,k} for n = 0..max_n: upper bounds on sup |(xi^k)^(n)| over
/// [-1,1], computed from dense sampling at 10^4 points via jet arithmetic,
/// with a 1.1 safety factor. Deterministic.
std::vector<double> estimate_sup_bounds(int k, int max_n);

/// Cached full table bounds[n][k] for n,k <= max_order.
const std::vector<std::vector<double>>& bump_bound_table(int max_order);

/// Deterministic scale choice: c_k is the smallest power of two >= 2
/// satisfying the certificate inequality for all n < k.
ScaleCertificate choose_scales(const TargetJet& target);
ScaleCertificate choose_scales_from_norms(const std::vector<double>& vk_norms);

/// Jet at x of u(x) = (c^-1 xi(c x))^k, the k-th cutoff factor.
Jet1 scaled_xi_power_jet(int k, double c, double x, int order);

/// A globally smooth function realizing the target jet at 0:
///     f(x) = sum_{k=0}^N (v_k / k!) (c_k^-1 xi(c_k x))^k.
/// The order-N jet of the evaluator at 0 reproduces the raw derivatives
/// v_k; away from [-1,1] the evaluator equals the constant v_0 term.
struct BorelRealization {
  TargetJet target;
  ScaleCertificate certificate;
  JetOracle evaluator;  // dim 1, codim = target codim, domain all of R
};

BorelRealization realize(const TargetJet& target);
BorelRealization realize_with_certificate(const TargetJet& target, ScaleCertificate cert);

/// Certified uniform bound sum_{k=m+1}^N 2^-k on the derivatives (of order
/// < l) of the terms omitted when truncating the series at m.
double tail_bound_report(const BorelRealization& realization, int l, int m);

}  // namespace cornerext
