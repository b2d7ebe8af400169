#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cornerext/jet.hpp"
#include "cornerext/multiindex.hpp"

namespace cornerext {

using Vec = std::vector<double>;

/// Multivariate truncated Taylor jet: one coefficient per multi-index alpha
/// with |alpha| <= order, Taylor-normalized (coeff(alpha) = d^alpha f / alpha!).
/// Immutable value type.
class JetN {
 public:
  JetN() = default;
  JetN(Vec base, int order);  // zero jet

  int dim() const { return static_cast<int>(base_.size()); }
  int order() const { return set_ ? set_->order() : 0; }
  const Vec& base() const { return base_; }
  const MultiIndexSet& index_set() const { return *set_; }

  double value() const { return c_[0]; }
  double coeff(int rank) const { return c_[static_cast<std::size_t>(rank)]; }
  double coeff(std::span<const int> alpha) const;
  double& coeff_ref(int rank) { return c_[static_cast<std::size_t>(rank)]; }
  const std::vector<double>& coeffs() const { return c_; }

  /// Raw mixed partial d^alpha f (coefficient times alpha!).
  double raw_partial(std::span<const int> alpha) const;
  bool finite() const;

 private:
  Vec base_;
  std::vector<double> c_;
  std::shared_ptr<const MultiIndexSet> set_;
};

JetN jetn_constant(Vec base, double value, int order);
JetN jetn_coordinate(const Vec& base, int axis, int order);

JetN jetn_add(const JetN& a, const JetN& b);
JetN jetn_sub(const JetN& a, const JetN& b);
JetN jetn_scale(const JetN& a, double s);
JetN jetn_shift(const JetN& a, double s);
JetN jetn_mul(const JetN& a, const JetN& b);  // truncated convolution
JetN jetn_recip(const JetN& a);

/// Apply a univariate function (given as its jet at a.value()) to a
/// multivariate jet: (outer o a). Exact to the shared truncation order.
JetN jetn_apply(const Jet1& outer, const JetN& a);

/// Jet of the partial derivative d_axis f, one order lower than j
/// (or the same order if j already has slack; here: order() - 1, min 0).
JetN jetn_partial(const JetN& j, int axis);

/// Embed a jet in a larger variable set: vars[i] gives the position of
/// the i-th variable of j in the new frame; all other derivatives are 0.
JetN jetn_embed(const JetN& j, std::span<const int> vars, const Vec& new_base, int order);

/// Compose a multivariate outer jet with univariate inner jets (a curve):
/// t -> F(g_0(t),...,g_{m-1}(t)). Inner values must match F's base point.
Jet1 jetn_compose_curve(const JetN& outer, std::span<const Jet1> inner);

/// Compose with multivariate inner jets (a map): x -> F(G_0(x),...,G_{m-1}(x)).
JetN jetn_compose_map(const JetN& outer, std::span<const JetN> inner);

/// Conversions between the d = 1 multivariate jet and Jet1.
Jet1 jetn_to_jet1(const JetN& j);
JetN jet1_to_jetn(const Jet1& j);

}  // namespace cornerext
