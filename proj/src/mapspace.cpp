#include "cornerext/mapspace.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cornerext {

namespace {

double portable_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

Mat random_algebra_element(GroupKind kind, int r, double radius, std::mt19937_64& eng) {
  Mat X(r);
  if (kind == GroupKind::kTorus) {
    // one-parameter rotation generator in the leading 2x2 block
    const double th = radius * (2.0 * portable_uniform(eng) - 1.0);
    X.at(0, 1) = -th;
    X.at(1, 0) = th;
    return X;
  }
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) X.at(i, j) = 2.0 * portable_uniform(eng) - 1.0;
  if (kind == GroupKind::kSpecialOrthogonal) {
    const Mat Xt = mat_transpose(X);
    X = mat_scale(mat_sub(X, Xt), 0.5);
  } else {  // special linear: traceless
    double tr = 0.0;
    for (int i = 0; i < r; ++i) tr += X.at(i, i);
    for (int i = 0; i < r; ++i) X.at(i, i) -= tr / r;
  }
  const double f = frobenius(X);
  if (f > 0.0) X = mat_scale(X, radius / f);
  return X;
}

}  // namespace

std::vector<double> uniform_grid(int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
  return g;
}

GroupMapElement identity_map(GroupKind kind, int r, const std::vector<double>& grid, int order) {
  GroupMapElement e;
  e.kind = kind;
  e.r = r;
  e.grid = grid;
  e.jets.reserve(grid.size());
  for (double t : grid) e.jets.push_back(MatJet::identity(r, t, order));
  return e;
}

GroupMapElement random_group_map(GroupKind kind, int r, int grid_points, int order,
                                 std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  const Mat A0 = random_algebra_element(kind, r, 0.4, eng);
  const Mat A1 = random_algebra_element(kind, r, 0.3, eng);
  const Mat A2 = random_algebra_element(kind, r, 0.2, eng);
  GroupMapElement e;
  e.kind = kind;
  e.r = r;
  e.grid = uniform_grid(grid_points);
  e.jets.reserve(e.grid.size());
  for (double t : e.grid) {
    // X(t) = A0 + t A1 + t^2 A2 as a matrix jet, then exp
    MatJet X(r, t, order);
    const Jet1 tv = jet_variable(t, order);
    const Jet1 t2 = jet_mul(tv, tv);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Jet1 acc = jet_constant(t, A0.at(i, j), order);
        acc = jet_add(acc, jet_scale(tv, A1.at(i, j)));
        acc = jet_add(acc, jet_scale(t2, A2.at(i, j)));
        X.at(i, j) = acc;
      }
    e.jets.push_back(matjet_exp(X));
  }
  return e;
}

GroupMapElement pointwise_mul(const GroupMapElement& a, const GroupMapElement& b) {
  if (a.kind != b.kind || a.r != b.r || a.grid != b.grid)
    throw std::invalid_argument("pointwise_mul: grid or group mismatch");
  GroupMapElement c = a;
  for (std::size_t i = 0; i < a.jets.size(); ++i) c.jets[i] = matjet_mul(a.jets[i], b.jets[i]);
  return c;
}

GroupMapElement pointwise_inv(const GroupMapElement& a) {
  GroupMapElement c = a;
  for (std::size_t i = 0; i < a.jets.size(); ++i) c.jets[i] = matjet_inv(a.jets[i]);
  return c;
}

double membership_residual(const GroupMapElement& a) {
  double worst = 0.0;
  for (const MatJet& j : a.jets) {
    const Mat V = j.value();
    if (a.kind == GroupKind::kSpecialLinear) {
      worst = std::max(worst, std::abs(mat_det(V) - 1.0));
    } else {
      const Mat G = mat_mul(mat_transpose(V), V);
      worst = std::max(worst, frobenius_dist(G, Mat::identity(a.r)));
    }
  }
  return worst;
}

double grid_max_distance(const GroupMapElement& a, const GroupMapElement& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.jets.size(); ++i)
    for (std::size_t k = 0; k < a.jets[i].e.size(); ++k) {
      const Jet1& ja = a.jets[i].e[k];
      const Jet1& jb = b.jets[i].e[k];
      for (int c = 0; c <= ja.order(); ++c)
        worst = std::max(worst, std::abs(ja.coeff(c) - jb.coeff(c)));
    }
  return worst;
}

bool GroupChart::contains(const Mat& k) const {
  return frobenius_dist(k, Mat::identity(k.n)) < radius;
}

MatJet GroupChart::to_algebra(const MatJet& k) const {
  if (!contains(k.value()))
    throw std::domain_error("GroupChart: value outside W = {||k-I|| < radius}");
  return matjet_log(k);
}

MatJet GroupChart::from_algebra(const MatJet& x) const { return matjet_exp(x); }

AlgebraMapElement chart_transport(const GroupMapElement& a) {
  const GroupChart chart;
  AlgebraMapElement x;
  x.r = a.r;
  x.grid = a.grid;
  x.jets.reserve(a.jets.size());
  for (const MatJet& j : a.jets) x.jets.push_back(chart.to_algebra(j));
  return x;
}

GroupMapElement inverse_chart_transport(const AlgebraMapElement& x, GroupKind kind) {
  GroupMapElement a;
  a.kind = kind;
  a.r = x.r;
  a.grid = x.grid;
  a.jets.reserve(x.jets.size());
  for (const MatJet& j : x.jets) a.jets.push_back(matjet_exp(j));
  return a;
}

double algebra_grid_max_distance(const AlgebraMapElement& a, const AlgebraMapElement& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.jets.size(); ++i)
    for (std::size_t k = 0; k < a.jets[i].e.size(); ++k) {
      const Jet1& ja = a.jets[i].e[k];
      const Jet1& jb = b.jets[i].e[k];
      for (int c = 0; c <= ja.order(); ++c)
        worst = std::max(worst, std::abs(ja.coeff(c) - jb.coeff(c)));
    }
  return worst;
}

GridMap make_grid_map(const std::vector<double>& grid, int order,
                      const std::vector<std::function<Jet1(double, int)>>& components) {
  GridMap g;
  g.grid = grid;
  g.comps.reserve(grid.size());
  for (double t : grid) {
    std::vector<Jet1> c;
    c.reserve(components.size());
    for (const auto& fn : components) c.push_back(fn(t, order));
    g.comps.push_back(std::move(c));
  }
  return g;
}

GridMap pushforward(const ParamMap& f, const GridMap& gamma) {
  GridMap out;
  out.grid = gamma.grid;
  out.comps.reserve(gamma.grid.size());
  for (int i = 0; i < gamma.points(); ++i) {
    const double t = gamma.grid[static_cast<std::size_t>(i)];
    Vec p{t};
    for (const Jet1& c : gamma.comps[static_cast<std::size_t>(i)]) p.push_back(c.value());
    if (!f.u_box.contains(Vec(p.begin() + 1, p.end())))
      throw std::domain_error("pushforward: gamma leaves U");
    const int order = gamma.comps[static_cast<std::size_t>(i)][0].order();
    const std::vector<JetN> J = f.f.eval(p, order);
    std::vector<Jet1> inner;
    inner.push_back(jet_variable(t, order));
    for (const Jet1& c : gamma.comps[static_cast<std::size_t>(i)]) inner.push_back(c);
    std::vector<Jet1> comp;
    comp.reserve(J.size());
    for (const JetN& Ji : J)
      comp.push_back(jetn_compose_curve(Ji, std::span<const Jet1>(inner.data(), inner.size())));
    out.comps.push_back(std::move(comp));
  }
  return out;
}

namespace {

// values of f_sharp(gamma + s*eta) on the grid
std::vector<Vec> sharp_values(const ParamMap& f, const GridMap& gamma, const GridMap& eta,
                              double s) {
  std::vector<Vec> out;
  out.reserve(gamma.grid.size());
  for (int i = 0; i < gamma.points(); ++i) {
    Vec p{gamma.grid[static_cast<std::size_t>(i)]};
    for (int c = 0; c < gamma.dim(); ++c)
      p.push_back(gamma.comps[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].value() +
                  s * eta.comps[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].value());
    if (!f.u_box.contains(Vec(p.begin() + 1, p.end())))
      throw std::domain_error("verify_dpf: step leaves U");
    const std::vector<JetN> J = f.f.eval(p, 0);
    Vec v;
    v.reserve(J.size());
    for (const JetN& Ji : J) v.push_back(Ji.value());
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

DpfReport verify_dpf(const ParamMap& f, const GridMap& gamma, const GridMap& eta, int n) {
  if (n < 1 || n > 2) throw std::invalid_argument("verify_dpf supports n in {1,2}");
  // detect the largest admissible epsilon = 2^-j with margin 1e-6
  double eps = 1.0;
  bool found = false;
  for (int j = 0; j <= 40; ++j, eps *= 0.5) {
    bool ok = true;
    for (int i = 0; i < gamma.points() && ok; ++i)
      for (int sgn = -1; sgn <= 1 && ok; sgn += 2)
        for (int c = 0; c < gamma.dim(); ++c) {
          const double u =
              gamma.comps[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].value() +
              sgn * eps * eta.comps[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].value();
          if (u < f.u_box.lo[static_cast<std::size_t>(c)] + 1e-6 ||
              u > f.u_box.hi[static_cast<std::size_t>(c)] - 1e-6) {
            ok = false;
            break;
          }
        }
    if (ok) {
      found = true;
      break;
    }
  }
  if (!found) throw std::domain_error("verify_dpf: no admissible epsilon");
  const double h1 = 1e-2, h2 = 1e-3;
  if (eps < h1) throw std::domain_error("verify_dpf: epsilon below the FD schedule");

  const std::vector<Vec> base = sharp_values(f, gamma, eta, 0.0);
  std::vector<Vec> fd(base.size(), Vec(base[0].size(), 0.0));
  auto fd_at = [&](double h) {
    std::vector<Vec> d(base.size(), Vec(base[0].size(), 0.0));
    if (n == 1) {
      const auto plus = sharp_values(f, gamma, eta, h);
      for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t c = 0; c < d[i].size(); ++c)
          d[i][c] = (plus[i][c] - base[i][c]) / h;
    } else {
      const auto plus = sharp_values(f, gamma, eta, h);
      const auto minus = sharp_values(f, gamma, eta, -h);
      for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t c = 0; c < d[i].size(); ++c)
          d[i][c] = (plus[i][c] - 2.0 * base[i][c] + minus[i][c]) / (h * h);
    }
    return d;
  };
  const auto d1 = fd_at(h1);
  const auto d2 = fd_at(h2);
  // Richardson: first-order scheme for n=1, second-order for n=2, ratio 10
  const double w = (n == 1) ? 10.0 : 100.0;
  for (std::size_t i = 0; i < fd.size(); ++i)
    for (std::size_t c = 0; c < fd[i].size(); ++c)
      fd[i][c] = (w * d2[i][c] - d1[i][c]) / (w - 1.0);

  // jet side: n-th derivative at s = 0 of s -> f(t, gamma(t) + s eta(t))
  DpfReport rep;
  rep.epsilon = eps;
  for (int i = 0; i < gamma.points(); ++i) {
    Vec p{gamma.grid[static_cast<std::size_t>(i)]};
    for (int c = 0; c < gamma.dim(); ++c)
      p.push_back(gamma.comps[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].value());
    const std::vector<JetN> J = f.f.eval(p, n);
    std::vector<Jet1> line;
    line.push_back(jet_constant(0.0, p[0], n));
    for (int c = 0; c < gamma.dim(); ++c) {
      Jet1 lc(0.0, n);
      std::vector<double> lcc(lc.coeffs());
      lcc[0] = p[static_cast<std::size_t>(c) + 1];
      if (n >= 1)
        lcc[1] = eta.comps[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].value();
      line.emplace_back(0.0, std::move(lcc));
    }
    for (std::size_t comp = 0; comp < J.size(); ++comp) {
      const Jet1 restricted =
          jetn_compose_curve(J[comp], std::span<const Jet1>(line.data(), line.size()));
      const double predicted = restricted.deriv(n);
      rep.max_residual = std::max(
          rep.max_residual,
          std::abs(predicted - fd[static_cast<std::size_t>(i)][comp]));
    }
  }
  return rep;
}

ParamMap named_param_map(const std::string& name) {
  ParamMap pm;
  pm.u_dim = 1;
  pm.u_box = Box{Vec{-4.0}, Vec{4.0}};
  JetOracle o;
  o.dim = 2;
  o.codim = 1;
  o.domain = box_domain(Vec{0.0, -4.0}, Vec{1.0, 4.0});
  if (name == "m_u2") {
    o.eval = [](const Vec& p, int n) {
      const JetN m = jetn_coordinate(p, 0, n);
      const JetN u = jetn_coordinate(p, 1, n);
      return std::vector<JetN>{jetn_mul(m, jetn_mul(u, u))};
    };
  } else if (name == "u3") {
    o.eval = [](const Vec& p, int n) {
      const JetN u = jetn_coordinate(p, 1, n);
      return std::vector<JetN>{jetn_mul(u, jetn_mul(u, u))};
    };
  } else if (name == "sin_u") {
    o.eval = [](const Vec& p, int n) {
      const JetN m = jetn_coordinate(p, 0, n);
      const JetN u = jetn_coordinate(p, 1, n);
      return std::vector<JetN>{
          jetn_add(m, jetn_apply(elementary_jet(Elementary::kSin, u.value(), n), u))};
    };
  } else if (name == "m_exp_u") {
    o.eval = [](const Vec& p, int n) {
      const JetN m = jetn_coordinate(p, 0, n);
      const JetN u = jetn_coordinate(p, 1, n);
      return std::vector<JetN>{
          jetn_mul(m, jetn_apply(elementary_jet(Elementary::kExp, u.value(), n), u))};
    };
  } else if (name == "linear") {
    o.eval = [](const Vec& p, int n) {
      return std::vector<JetN>{jetn_coordinate(p, 1, n)};
    };
  } else if (name == "m_plus_u2") {
    o.eval = [](const Vec& p, int n) {
      const JetN m = jetn_coordinate(p, 0, n);
      const JetN u = jetn_coordinate(p, 1, n);
      return std::vector<JetN>{jetn_add(m, jetn_mul(u, u))};
    };
  } else {
    throw std::invalid_argument("unknown param map: " + name);
  }
  pm.f = std::move(o);
  return pm;
}

JetOracle named_holomorphy_case(const std::string& name) {
  JetOracle o;
  if (name == "z2") {
    // z^2 = (x^2 - y^2, 2xy)
    o.dim = 2;
    o.codim = 2;
    o.domain = box_domain(Vec{-1.0, -1.0}, Vec{1.0, 1.0});
    o.eval = [](const Vec& p, int n) {
      const JetN x = jetn_coordinate(p, 0, n);
      const JetN y = jetn_coordinate(p, 1, n);
      return std::vector<JetN>{jetn_sub(jetn_mul(x, x), jetn_mul(y, y)),
                               jetn_scale(jetn_mul(x, y), 2.0)};
    };
  } else if (name == "expz") {
    // exp(z) = (e^x cos y, e^x sin y)
    o.dim = 2;
    o.codim = 2;
    o.domain = box_domain(Vec{-1.0, -1.0}, Vec{1.0, 1.0});
    o.eval = [](const Vec& p, int n) {
      const JetN x = jetn_coordinate(p, 0, n);
      const JetN y = jetn_coordinate(p, 1, n);
      const JetN ex = jetn_apply(elementary_jet(Elementary::kExp, x.value(), n), x);
      const JetN cy = jetn_apply(elementary_jet(Elementary::kCos, y.value(), n), y);
      const JetN sy = jetn_apply(elementary_jet(Elementary::kSin, y.value(), n), y);
      return std::vector<JetN>{jetn_mul(ex, cy), jetn_mul(ex, sy)};
    };
  } else if (name == "conj") {
    // conj(z) = (x, -y): antilinear control
    o.dim = 2;
    o.codim = 2;
    o.domain = box_domain(Vec{-1.0, -1.0}, Vec{1.0, 1.0});
    o.eval = [](const Vec& p, int n) {
      return std::vector<JetN>{jetn_coordinate(p, 0, n),
                               jetn_scale(jetn_coordinate(p, 1, n), -1.0)};
    };
  } else if (name == "rez") {
    // Re(z) as a complex-valued map: (x, 0)
    o.dim = 2;
    o.codim = 2;
    o.domain = box_domain(Vec{-1.0, -1.0}, Vec{1.0, 1.0});
    o.eval = [](const Vec& p, int n) {
      return std::vector<JetN>{jetn_coordinate(p, 0, n), jetn_constant(p, 0.0, n)};
    };
  } else if (name == "matmul2") {
    // (A,B) -> AB on a GL(2,C) x GL(2,C) slice; 8 complex = 16 real inputs,
    // 4 complex = 8 real outputs. Entry (i,j): sum_k A_ik B_kj.
    o.dim = 16;
    o.codim = 8;
    Vec lo(16, -0.3), hi(16, 0.3);
    // keep the slice near (I, I) so both factors are invertible
    for (int d = 0; d < 2; ++d)
      for (int i = 0; i < 2; ++i) {
        lo[static_cast<std::size_t>(d * 8 + (i * 2 + i) * 2)] += 1.0;
        hi[static_cast<std::size_t>(d * 8 + (i * 2 + i) * 2)] += 1.0;
      }
    o.domain = box_domain(lo, hi);
    o.eval = [](const Vec& p, int n) {
      // layout: A entries (0..3), B entries (4..7), each entry (re, im)
      auto re = [&](int which, int i, int j) {
        return jetn_coordinate(p, which * 8 + (i * 2 + j) * 2, n);
      };
      auto im = [&](int which, int i, int j) {
        return jetn_coordinate(p, which * 8 + (i * 2 + j) * 2 + 1, n);
      };
      std::vector<JetN> out;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          JetN sre = jetn_constant(p, 0.0, n);
          JetN sim = jetn_constant(p, 0.0, n);
          for (int k = 0; k < 2; ++k) {
            const JetN ar = re(0, i, k), ai = im(0, i, k);
            const JetN br = re(1, k, j), bi = im(1, k, j);
            sre = jetn_add(sre, jetn_sub(jetn_mul(ar, br), jetn_mul(ai, bi)));
            sim = jetn_add(sim, jetn_add(jetn_mul(ar, bi), jetn_mul(ai, br)));
          }
          out.push_back(sre);
          out.push_back(sim);
        }
      return out;
    };
  } else {
    throw std::invalid_argument("unknown holomorphy case: " + name);
  }
  return o;
}

HolomorphyReport holomorphy_check(const JetOracle& f_paired, int samples, std::uint64_t seed) {
  if (f_paired.dim % 2 != 0 || f_paired.codim % 2 != 0)
    throw std::invalid_argument("holomorphy_check needs paired-real encoding");
  const int e = f_paired.dim / 2;
  const int s = f_paired.codim / 2;
  std::mt19937_64 eng(seed);
  HolomorphyReport rep;
  const Box& b = f_paired.domain.bounds;
  for (int it = 0; it < samples; ++it) {
    Vec x(static_cast<std::size_t>(f_paired.dim));
    for (int i = 0; i < f_paired.dim; ++i) {
      const double lo = b.lo[static_cast<std::size_t>(i)], hi = b.hi[static_cast<std::size_t>(i)];
      x[static_cast<std::size_t>(i)] = lo + (hi - lo) * (0.1 + 0.8 * portable_uniform(eng));
    }
    Vec v(static_cast<std::size_t>(f_paired.dim));
    double nrm = 0.0;
    for (double& vi : v) {
      vi = 2.0 * portable_uniform(eng) - 1.0;
      nrm += vi * vi;
    }
    nrm = std::sqrt(nrm);
    for (double& vi : v) vi /= nrm;
    // iv: per complex coordinate (re,im) -> (-im, re)
    Vec iv(v.size());
    for (int c = 0; c < e; ++c) {
      iv[static_cast<std::size_t>(2 * c)] = -v[static_cast<std::size_t>(2 * c + 1)];
      iv[static_cast<std::size_t>(2 * c + 1)] = v[static_cast<std::size_t>(2 * c)];
    }
    const std::vector<JetN> J = f_paired.eval(x, 1);
    auto differential = [&](const Vec& dir) {
      Vec out(static_cast<std::size_t>(f_paired.codim), 0.0);
      std::vector<int> alpha(static_cast<std::size_t>(f_paired.dim), 0);
      for (int comp = 0; comp < f_paired.codim; ++comp)
        for (int j = 0; j < f_paired.dim; ++j) {
          std::fill(alpha.begin(), alpha.end(), 0);
          alpha[static_cast<std::size_t>(j)] = 1;
          out[static_cast<std::size_t>(comp)] +=
              J[static_cast<std::size_t>(comp)].coeff(alpha) * dir[static_cast<std::size_t>(j)];
        }
      return out;
    };
    const Vec dfi = differential(iv);
    const Vec dfv = differential(v);
    // i * dfv on the codomain
    for (int c = 0; c < s; ++c) {
      const double re = -dfv[static_cast<std::size_t>(2 * c + 1)];
      const double im = dfv[static_cast<std::size_t>(2 * c)];
      rep.max_residual =
          std::max(rep.max_residual, std::abs(dfi[static_cast<std::size_t>(2 * c)] - re));
      rep.max_residual =
          std::max(rep.max_residual, std::abs(dfi[static_cast<std::size_t>(2 * c + 1)] - im));
    }
  }
  rep.pass = rep.max_residual <= 1e-8;
  return rep;
}

GroupAxiomReport verify_local_group_axioms(GroupKind kind, int r, double v_radius,
                                           double w_radius, int samples, std::uint64_t seed,
                                           int order) {
  std::mt19937_64 eng(seed);
  GroupAxiomReport rep;
  rep.samples = samples;
  std::vector<Mat> vball, wball;
  for (int i = 0; i < samples; ++i) {
    vball.push_back(mat_exp(random_algebra_element(kind, r, v_radius * portable_uniform(eng), eng)));
    wball.push_back(mat_exp(random_algebra_element(kind, r, w_radius * portable_uniform(eng), eng)));
  }
  const Mat I = Mat::identity(r);
  auto in_chart = [&](const Mat& k) { return frobenius_dist(k, I) < 1.0; };
  // i) products of V-elements land in U
  for (int i = 0; i < samples; ++i) {
    const Mat prod = mat_mul(vball[static_cast<std::size_t>(i)],
                             vball[static_cast<std::size_t>((i * 7 + 3) % samples)]);
    rep.worst_product_norm = std::max(rep.worst_product_norm, frobenius_dist(prod, I));
    if (!in_chart(prod)) ++rep.violations;
  }
  // ii) inversion closes on V (exp-balls are inversion symmetric)
  for (int i = 0; i < samples; ++i) {
    const Mat inv = mat_inverse(vball[static_cast<std::size_t>(i)]);
    if (!in_chart(inv)) ++rep.violations;
    const double lnorm = frobenius(mat_log(mat_mul(inv, vball[static_cast<std::size_t>(i)])));
    if (lnorm > 1e-9) ++rep.violations;  // inv really inverts
  }
  // iii) conjugation of W-elements by V-elements stays in U
  for (int i = 0; i < samples; ++i) {
    const Mat& g = vball[static_cast<std::size_t>(i)];
    const Mat conj =
        mat_mul(mat_inverse(g), mat_mul(wball[static_cast<std::size_t>(i)], g));
    if (!in_chart(conj)) ++rep.violations;
    if (kind == GroupKind::kTorus) {
      // abelian: conjugation must be the identity map
      if (frobenius_dist(conj, wball[static_cast<std::size_t>(i)]) > 1e-10) ++rep.violations;
    }
  }
  // smoothness proxy: jets of multiplication/inversion/conjugation curves
  const std::vector<double> grid = uniform_grid(8);
  const GroupMapElement a = random_group_map(kind, r, 8, order, seed + 1);
  const GroupMapElement b = random_group_map(kind, r, 8, order, seed + 2);
  const GroupMapElement ab = pointwise_mul(a, b);
  const GroupMapElement ai = pointwise_inv(a);
  const GroupMapElement conj = pointwise_mul(pointwise_inv(b), pointwise_mul(a, b));
  for (const auto* e : {&ab, &ai, &conj})
    for (const MatJet& j : e->jets) rep.jets_finite = rep.jets_finite && j.finite();
  return rep;
}

}  // namespace cornerext
