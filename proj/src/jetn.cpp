#include "cornerext/jetn.hpp"

#include <cmath>
#include <stdexcept>

namespace cornerext {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_same_frame(const JetN& a, const JetN& b) {
  require(a.dim() == b.dim() && a.order() == b.order(), "jet frame mismatch");
  require(a.base() == b.base(), "jet base point mismatch");
}

}  // namespace

JetN::JetN(Vec base, int order) : base_(std::move(base)) {
  set_ = MultiIndexSet::get(static_cast<int>(base_.size()), order);
  c_.assign(static_cast<std::size_t>(set_->size()), 0.0);
}

double JetN::coeff(std::span<const int> alpha) const {
  const int r = set_->rank(alpha);
  return r < 0 ? 0.0 : c_[static_cast<std::size_t>(r)];
}

double JetN::raw_partial(std::span<const int> alpha) const {
  const int r = set_->rank(alpha);
  if (r < 0) return 0.0;
  return c_[static_cast<std::size_t>(r)] * set_->at(r).factorial();
}

bool JetN::finite() const {
  for (double v : c_)
    if (!std::isfinite(v)) return false;
  return true;
}

JetN jetn_constant(Vec base, double value, int order) {
  JetN j(std::move(base), order);
  j.coeff_ref(0) = value;
  return j;
}

JetN jetn_coordinate(const Vec& base, int axis, int order) {
  JetN j(base, order);
  j.coeff_ref(0) = base[static_cast<std::size_t>(axis)];
  if (order >= 1) {
    std::vector<int> e(static_cast<std::size_t>(j.dim()), 0);
    e[static_cast<std::size_t>(axis)] = 1;
    const int r = j.index_set().rank(e);
    j.coeff_ref(r) = 1.0;
  }
  return j;
}

JetN jetn_add(const JetN& a, const JetN& b) {
  check_same_frame(a, b);
  JetN r = a;
  for (int i = 0; i < a.index_set().size(); ++i) r.coeff_ref(i) += b.coeff(i);
  return r;
}

JetN jetn_sub(const JetN& a, const JetN& b) {
  check_same_frame(a, b);
  JetN r = a;
  for (int i = 0; i < a.index_set().size(); ++i) r.coeff_ref(i) -= b.coeff(i);
  return r;
}

JetN jetn_scale(const JetN& a, double s) {
  JetN r = a;
  for (int i = 0; i < a.index_set().size(); ++i) r.coeff_ref(i) *= s;
  return r;
}

JetN jetn_shift(const JetN& a, double s) {
  JetN r = a;
  r.coeff_ref(0) += s;
  return r;
}

JetN jetn_mul(const JetN& a, const JetN& b) {
  check_same_frame(a, b);
  const MultiIndexSet& set = a.index_set();
  const int d = a.dim();
  JetN r(a.base(), a.order());
  std::vector<int> sum(static_cast<std::size_t>(d), 0);
  for (int ia = 0; ia < set.size(); ++ia) {
    const double ca = a.coeff(ia);
    if (ca == 0.0) continue;
    const MultiIndex& al = set.at(ia);
    for (int ib = 0; ib < set.size(); ++ib) {
      const double cb = b.coeff(ib);
      if (cb == 0.0) continue;
      const MultiIndex& be = set.at(ib);
      if (al.degree() + be.degree() > set.order()) continue;
      for (int k = 0; k < d; ++k) sum[static_cast<std::size_t>(k)] = al[k] + be[k];
      const int rr = set.rank(sum);
      r.coeff_ref(rr) += ca * cb;
    }
  }
  return r;
}

JetN jetn_recip(const JetN& a) {
  if (a.value() == 0.0) throw std::domain_error("jetn_recip at a zero value");
  return jetn_apply(elementary_jet(Elementary::kReciprocal, a.value(), a.order()), a);
}

JetN jetn_apply(const Jet1& outer, const JetN& a) {
  require(outer.order() == a.order(), "jetn_apply order mismatch");
  const double tol = 1e-9 * std::max(1.0, std::abs(a.value()));
  require(std::abs(outer.base() - a.value()) <= tol, "jetn_apply base mismatch");
  JetN delta = a;
  delta.coeff_ref(0) = 0.0;
  const int n = outer.order();
  JetN r = jetn_constant(a.base(), outer.coeff(n), n);
  for (int j = n - 1; j >= 0; --j) r = jetn_shift(jetn_mul(r, delta), outer.coeff(j));
  return r;
}

JetN jetn_partial(const JetN& j, int axis) {
  const int m = std::max(0, j.order() - 1);
  JetN r(j.base(), m);
  const MultiIndexSet& rset = r.index_set();
  std::vector<int> up;
  for (int i = 0; i < rset.size(); ++i) {
    up = rset.at(i).exponents;
    up[static_cast<std::size_t>(axis)] += 1;
    const int src = j.index_set().rank(up);
    if (src >= 0)
      r.coeff_ref(i) = j.coeff(src) * up[static_cast<std::size_t>(axis)];
  }
  return r;
}

JetN jetn_embed(const JetN& j, std::span<const int> vars, const Vec& new_base, int order) {
  require(static_cast<int>(vars.size()) == j.dim(), "jetn_embed variable map size");
  JetN r(new_base, order);
  std::vector<int> alpha(new_base.size(), 0);
  for (int i = 0; i < j.index_set().size(); ++i) {
    const MultiIndex& a = j.index_set().at(i);
    if (a.degree() > order) continue;
    std::fill(alpha.begin(), alpha.end(), 0);
    for (int k = 0; k < j.dim(); ++k) alpha[static_cast<std::size_t>(vars[k])] = a[k];
    const int rr = r.index_set().rank(alpha);
    r.coeff_ref(rr) = j.coeff(i);
  }
  return r;
}

Jet1 jetn_compose_curve(const JetN& outer, std::span<const Jet1> inner) {
  require(static_cast<int>(inner.size()) == outer.dim(), "compose_curve arity");
  const int n = outer.order();
  const double t0 = inner.empty() ? 0.0 : inner[0].base();
  // deltas: inner components minus the outer base values (zero constant term)
  std::vector<Jet1> delta;
  delta.reserve(inner.size());
  for (int i = 0; i < outer.dim(); ++i) {
    require(inner[static_cast<std::size_t>(i)].order() == n, "compose_curve order");
    const double tol = 1e-9 * std::max(1.0, std::abs(outer.base()[static_cast<std::size_t>(i)]));
    require(std::abs(inner[static_cast<std::size_t>(i)].value() -
                     outer.base()[static_cast<std::size_t>(i)]) <= tol,
            "compose_curve base mismatch");
    Jet1 d = jet_shift(inner[static_cast<std::size_t>(i)],
                       -outer.base()[static_cast<std::size_t>(i)]);
    std::vector<double> dc(d.coeffs());
    dc[0] = 0.0;  // kill rounding residue in the constant term
    delta.emplace_back(t0, std::move(dc));
  }
  // accumulate monomials delta^alpha by walking ranks in graded order and
  // reusing the largest previously computed divisor power
  const MultiIndexSet& set = outer.index_set();
  std::vector<Jet1> mono(static_cast<std::size_t>(set.size()), Jet1(t0, n));
  mono[0] = jet_constant(t0, 1.0, n);
  Jet1 acc = jet_scale(mono[0], outer.coeff(0));
  std::vector<int> down;
  for (int r = 1; r < set.size(); ++r) {
    const MultiIndex& a = set.at(r);
    int ax = 0;
    while (a[ax] == 0) ++ax;
    down = a.exponents;
    down[static_cast<std::size_t>(ax)] -= 1;
    const int prev = set.rank(down);
    mono[static_cast<std::size_t>(r)] =
        jet_mul(mono[static_cast<std::size_t>(prev)], delta[static_cast<std::size_t>(ax)]);
    if (outer.coeff(r) != 0.0)
      acc = jet_add(acc, jet_scale(mono[static_cast<std::size_t>(r)], outer.coeff(r)));
  }
  return acc;
}

JetN jetn_compose_map(const JetN& outer, std::span<const JetN> inner) {
  require(static_cast<int>(inner.size()) == outer.dim(), "compose_map arity");
  const int n = outer.order();
  const Vec& x0 = inner.empty() ? Vec{} : inner[0].base();
  std::vector<JetN> delta;
  delta.reserve(inner.size());
  for (int i = 0; i < outer.dim(); ++i) {
    require(inner[static_cast<std::size_t>(i)].order() == n, "compose_map order");
    const double tol = 1e-9 * std::max(1.0, std::abs(outer.base()[static_cast<std::size_t>(i)]));
    require(std::abs(inner[static_cast<std::size_t>(i)].value() -
                     outer.base()[static_cast<std::size_t>(i)]) <= tol,
            "compose_map base mismatch");
    JetN d = jetn_shift(inner[static_cast<std::size_t>(i)],
                        -outer.base()[static_cast<std::size_t>(i)]);
    d.coeff_ref(0) = 0.0;
    delta.push_back(std::move(d));
  }
  const MultiIndexSet& set = outer.index_set();
  std::vector<JetN> mono(static_cast<std::size_t>(set.size()), JetN(x0, n));
  mono[0] = jetn_constant(x0, 1.0, n);
  JetN acc = jetn_scale(mono[0], outer.coeff(0));
  std::vector<int> down;
  for (int r = 1; r < set.size(); ++r) {
    const MultiIndex& a = set.at(r);
    int ax = 0;
    while (a[ax] == 0) ++ax;
    down = a.exponents;
    down[static_cast<std::size_t>(ax)] -= 1;
    const int prev = set.rank(down);
    mono[static_cast<std::size_t>(r)] =
        jetn_mul(mono[static_cast<std::size_t>(prev)], delta[static_cast<std::size_t>(ax)]);
    if (outer.coeff(r) != 0.0)
      acc = jetn_add(acc, jetn_scale(mono[static_cast<std::size_t>(r)], outer.coeff(r)));
  }
  return acc;
}

Jet1 jetn_to_jet1(const JetN& j) {
  require(j.dim() == 1, "jetn_to_jet1 needs dimension 1");
  std::vector<double> c(static_cast<std::size_t>(j.order()) + 1, 0.0);
  std::vector<int> a(1, 0);
  for (int k = 0; k <= j.order(); ++k) {
    a[0] = k;
    c[static_cast<std::size_t>(k)] = j.coeff(a);
  }
  return Jet1(j.base()[0], std::move(c));
}

JetN jet1_to_jetn(const Jet1& j) {
  JetN r(Vec{j.base()}, j.order());
  std::vector<int> a(1, 0);
  for (int k = 0; k <= j.order(); ++k) {
    a[0] = k;
    r.coeff_ref(r.index_set().rank(a)) = j.coeff(k);
  }
  return r;
}

}  // namespace cornerext
