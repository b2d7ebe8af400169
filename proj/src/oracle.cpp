#include "cornerext/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace cornerext {

bool Box::contains(const Vec& p, double pad) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (p[i] < lo[i] - pad || p[i] > hi[i] + pad) return false;
  return true;
}

Domain box_domain(Vec lo, Vec hi) {
  Box b{std::move(lo), std::move(hi)};
  Domain d;
  d.bounds = b;
  d.member = [b](const Vec& p) { return b.contains(p); };
  d.closed = true;
  return d;
}

Domain all_space(int dim) {
  Domain d;
  const double inf = std::numeric_limits<double>::infinity();
  d.bounds = Box{Vec(static_cast<std::size_t>(dim), -inf), Vec(static_cast<std::size_t>(dim), inf)};
  d.member = [](const Vec&) { return true; };
  d.closed = false;
  return d;
}

std::vector<JetN> JetOracle::jets(const Vec& p, int order) const {
  if (order > max_order) throw std::domain_error("jet order exceeds oracle capability");
  return eval(p, order);
}

JetN JetOracle::jet(const Vec& p, int order) const {
  return jets(p, order)[0];
}

JetOracle constant_oracle(int dim, double value, Domain dom) {
  JetOracle o;
  o.dim = dim;
  o.codim = 1;
  o.domain = std::move(dom);
  o.eval = [value](const Vec& p, int order) {
    return std::vector<JetN>{jetn_constant(p, value, order)};
  };
  return o;
}

JetOracle univariate_oracle(std::function<Jet1(double, int)> fn, Domain dom) {
  JetOracle o;
  o.dim = 1;
  o.codim = 1;
  o.domain = std::move(dom);
  o.eval = [fn = std::move(fn)](const Vec& p, int order) {
    return std::vector<JetN>{jet1_to_jetn(fn(p[0], order))};
  };
  return o;
}

JetOracle named_interval_source(const std::string& name) {
  Domain dom = box_domain(Vec{0.0}, Vec{1.0});
  if (name == "sin")
    return univariate_oracle(
        [](double x, int n) { return elementary_jet(Elementary::kSin, x, n); }, dom);
  if (name == "exp")
    return univariate_oracle(
        [](double x, int n) { return elementary_jet(Elementary::kExp, x, n); }, dom);
  if (name == "runge")
    return univariate_oracle(
        [](double x, int n) {
          const double q[3] = {1.0, 0.0, 25.0};
          return jet_recip(polynomial_jet(std::span<const double>(q, 3), x, n));
        },
        dom);
  if (name == "poly5")
    return univariate_oracle(
        [](double x, int n) {
          const double q[6] = {1.0, 1.0, 1.0, 0.0, 1.0, 1.0};  // 1+x+x^2+x^4+x^5
          return polynomial_jet(std::span<const double>(q, 6), x, n);
        },
        dom);
  if (name == "const5") return constant_oracle(1, 5.0, dom);
  if (name == "linear")
    return univariate_oracle([](double x, int n) { return jet_variable(x, n); }, dom);
  throw std::invalid_argument("unknown interval source: " + name);
}

JetOracle named_box_source(const std::string& name) {
  Domain dom = box_domain(Vec{0.0, 0.0}, Vec{1.0, 1.0});
  JetOracle o;
  o.dim = 2;
  o.codim = 1;
  o.domain = std::move(dom);
  if (name == "exp2d") {
    o.eval = [](const Vec& p, int n) {
      JetN s = jetn_add(jetn_coordinate(p, 0, n), jetn_coordinate(p, 1, n));
      return std::vector<JetN>{jetn_apply(elementary_jet(Elementary::kExp, s.value(), n), s)};
    };
  } else if (name == "sum2d") {
    o.eval = [](const Vec& p, int n) {
      return std::vector<JetN>{jetn_add(jetn_coordinate(p, 0, n), jetn_coordinate(p, 1, n))};
    };
  } else if (name == "prod2d") {
    o.eval = [](const Vec& p, int n) {
      return std::vector<JetN>{jetn_mul(jetn_coordinate(p, 0, n), jetn_coordinate(p, 1, n))};
    };
  } else if (name == "sq2d") {
    o.eval = [](const Vec& p, int n) {
      const JetN x = jetn_coordinate(p, 0, n);
      const JetN y = jetn_coordinate(p, 1, n);
      return std::vector<JetN>{jetn_add(jetn_mul(x, x), jetn_mul(y, y))};
    };
  } else {
    throw std::invalid_argument("unknown box source: " + name);
  }
  return o;
}

JetOracle oracle_add(const JetOracle& a, const JetOracle& b) {
  if (a.dim != b.dim || a.codim != b.codim)
    throw std::invalid_argument("oracle_add shape mismatch");
  JetOracle o = a;
  o.max_order = std::min(a.max_order, b.max_order);
  o.eval = [a, b](const Vec& p, int n) {
    std::vector<JetN> ja = a.eval(p, n);
    const std::vector<JetN> jb = b.eval(p, n);
    for (std::size_t i = 0; i < ja.size(); ++i) ja[i] = jetn_add(ja[i], jb[i]);
    return ja;
  };
  return o;
}

JetOracle oracle_scale(const JetOracle& a, double s) {
  JetOracle o = a;
  o.eval = [a, s](const Vec& p, int n) {
    std::vector<JetN> j = a.eval(p, n);
    for (auto& ji : j) ji = jetn_scale(ji, s);
    return j;
  };
  return o;
}

JetOracle oracle_compose(const JetOracle& g, const JetOracle& f) {
  if (g.dim != f.codim) throw std::invalid_argument("oracle_compose arity mismatch");
  JetOracle o;
  o.dim = f.dim;
  o.codim = g.codim;
  o.domain = f.domain;
  o.max_order = std::min(f.max_order, g.max_order);
  o.eval = [g, f](const Vec& p, int n) {
    const std::vector<JetN> inner = f.eval(p, n);
    Vec u(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) u[i] = inner[i].value();
    const std::vector<JetN> outer = g.eval(u, n);
    std::vector<JetN> out;
    out.reserve(outer.size());
    for (const JetN& gj : outer)
      out.push_back(jetn_compose_map(gj, std::span<const JetN>(inner.data(), inner.size())));
    return out;
  };
  return o;
}

JetOracle tangent_lift(const JetOracle& g) {
  JetOracle o;
  o.dim = 2 * g.dim;
  o.codim = 2 * g.codim;
  o.domain = all_space(2 * g.dim);
  if (g.max_order != std::numeric_limits<int>::max()) o.max_order = g.max_order - 1;
  const int d = g.dim;
  o.eval = [g, d](const Vec& pv, int n) {
    Vec x(pv.begin(), pv.begin() + d);
    const std::vector<JetN> base = g.eval(x, n + 1);
    std::vector<int> xvars(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) xvars[static_cast<std::size_t>(i)] = i;
    std::vector<JetN> out;
    out.reserve(base.size() * 2);
    // value components g_i(x), truncated to order n in the doubled frame
    for (const JetN& bj : base) {
      JetN trunc(x, n);
      for (int r = 0; r < trunc.index_set().size(); ++r)
        trunc.coeff_ref(r) = bj.coeff(trunc.index_set().at(r).exponents);
      out.push_back(jetn_embed(trunc, xvars, pv, n));
    }
    // derivative components sum_j d_j g_i(x) v_j
    for (const JetN& bj : base) {
      JetN acc(pv, n);
      for (int j = 0; j < d; ++j) {
        JetN pd = jetn_partial(bj, j);  // order n
        const JetN lifted = jetn_embed(pd, xvars, pv, n);
        const JetN vj = jetn_coordinate(pv, d + j, n);
        acc = jetn_add(acc, jetn_mul(lifted, vj));
      }
      out.push_back(acc);
    }
    return out;
  };
  return o;
}

FdReport fd_crosscheck(const JetOracle& oracle, const Vec& point, const Vec& direction,
                       int k, double h) {
  if (k < 0) throw std::invalid_argument("fd_crosscheck needs k >= 0");
  const double pad = 1e-12;
  auto at = [&](double t) {
    Vec p(point);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * direction[i];
    if (!oracle.domain.bounds.contains(p, pad))
      throw std::domain_error("fd_crosscheck stencil leaves the domain");
    return oracle.jet(p, 0).value();
  };
  // jet prediction: compose with the line point + t*direction at t=0
  std::vector<Jet1> line;
  const JetN J = oracle.jet(point, k);
  for (int i = 0; i < oracle.dim; ++i) {
    Jet1 li(0.0, k);
    std::vector<double> c(li.coeffs());
    c[0] = point[static_cast<std::size_t>(i)];
    if (k >= 1) c[1] = direction[static_cast<std::size_t>(i)];
    line.emplace_back(0.0, std::move(c));
  }
  const Jet1 restricted = jetn_compose_curve(J, std::span<const Jet1>(line.data(), line.size()));
  FdReport rep;
  rep.jet_value = restricted.deriv(k);
  if (k == 0) {
    rep.fd_value = at(0.0);
    return rep;
  }
  // central difference of order k via binomial stencil, steps h and h/2
  auto central = [&](double step) {
    double acc = 0.0;
    double sign = 1.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      acc += sign * binom * at((0.5 * k - j) * step);
      sign = -sign;
      binom = binom * (k - j) / (j + 1);
    }
    return acc / std::pow(step, k);
  };
  const double d1 = central(h);
  const double d2 = central(h / 2.0);
  rep.fd_value = (4.0 * d2 - d1) / 3.0;  // Richardson for O(h^2) stencils
  return rep;
}

}  // namespace cornerext
