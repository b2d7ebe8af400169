#pragma once

#include <functional>
#include <limits>
#include <string>

#include "cornerext/jetn.hpp"

namespace cornerext {

/// Axis-aligned box; used both as a domain and as a sampling window.
struct Box {
  Vec lo, hi;
  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& p, double pad = 0.0) const;
};

/// A domain description: bounding box plus a membership predicate.
/// "Open" is not certified, only sampled; `closed` records whether the
/// boundary belongs to the domain (jets there are one-sided limits).
struct Domain {
  Box bounds;
  std::function<bool(const Vec&)> member;
  bool closed = true;

  bool contains(const Vec& p) const { return member ? member(p) : bounds.contains(p); }
};

Domain box_domain(Vec lo, Vec hi);
Domain all_space(int dim);

/// A smooth map presented as "evaluate the order-m jet at any point".
/// Evaluators are pure and deterministic; max_order bounds the m a caller
/// may request (unbounded for analytic sources).
struct JetOracle {
  int dim = 1;
  int codim = 1;
  int max_order = std::numeric_limits<int>::max();
  Domain domain;
  std::function<std::vector<JetN>(const Vec&, int)> eval;

  std::vector<JetN> jets(const Vec& p, int order) const;
  JetN jet(const Vec& p, int order) const;  // codim 1 convenience
  double value(const Vec& p) const { return jet(p, 0).value(); }
};

// Basic constructions -------------------------------------------------------

JetOracle constant_oracle(int dim, double value, Domain dom);

/// Scalar oracle from a univariate jet builder.
JetOracle univariate_oracle(std::function<Jet1(double, int)> fn, Domain dom);

/// Named one-dimensional sources on [0,1] used by the extension suites.
/// Names: "sin", "exp", "runge" (1/(1+25x^2)), "poly5" (x^5+x^4+x^2+x+1),
/// "const5", "linear".
JetOracle named_interval_source(const std::string& name);

/// Named two-dimensional sources on [0,1]^2: "exp2d" (exp(x+y)),
/// "sum2d" (x+y), "prod2d" (x*y), "sq2d" (x^2+y^2).
JetOracle named_box_source(const std::string& name);

/// Pointwise algebra on oracles (componentwise codomains must match).
JetOracle oracle_add(const JetOracle& a, const JetOracle& b);
JetOracle oracle_scale(const JetOracle& a, double s);

/// Composition g(f(x)) with jets propagated through jetn_compose_map.
/// f: R^d -> R^m (codim m), g: R^m -> R^s.
JetOracle oracle_compose(const JetOracle& g, const JetOracle& f);

/// Tangent lift: from g: R^d -> R^s build Tg: R^{2d} -> R^{2s},
/// (x, v) -> (g(x), Dg(x) v). Jets of order m require g-jets of order m+1.
JetOracle tangent_lift(const JetOracle& g);

// Verification helpers -------------------------------------------------------

struct FdReport {
  double jet_value = 0.0;  // k-th directional derivative predicted by the jet
  double fd_value = 0.0;   // Richardson-extrapolated central difference
  double discrepancy() const { return jet_value - fd_value; }
};

/// Independent finite-difference cross-check of the k-th directional
/// derivative at a point (direction need not be normalized). Central
/// stencils at steps h and h/2, Richardson extrapolated. Throws
/// std::domain_error if the stencil leaves the domain's bounding box.
FdReport fd_crosscheck(const JetOracle& oracle, const Vec& point, const Vec& direction,
                       int k, double h = 1e-3);

}  // namespace cornerext
