#include "cornerext/manifold.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cornerext/matjet.hpp"

namespace cornerext {

namespace {

double portable_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

// Cone ----------------------------------------------------------------------

double CornerCone::apply(int k, const Vec& u) const {
  const Vec& lam = functionals[static_cast<std::size_t>(k)];
  double s = 0.0;
  for (std::size_t i = 0; i < lam.size(); ++i) s += lam[i] * u[i];
  return s;
}

bool CornerCone::member(const Vec& u, double tol) const {
  for (std::size_t k = 0; k < functionals.size(); ++k)
    if (apply(static_cast<int>(k), u) < -tol) return false;
  return true;
}

bool CornerCone::interior(const Vec& u, double tol) const {
  for (std::size_t k = 0; k < functionals.size(); ++k)
    if (apply(static_cast<int>(k), u) <= tol) return false;
  return true;
}

std::vector<int> CornerCone::active_set(const Vec& u, double tol) const {
  std::vector<int> act;
  for (std::size_t k = 0; k < functionals.size(); ++k)
    if (std::abs(apply(static_cast<int>(k), u)) <= tol) act.push_back(static_cast<int>(k));
  return act;
}

CornerCone CornerCone::orthant(int dim, int codim) {
  CornerCone c;
  c.dim = dim;
  for (int k = 0; k < codim; ++k) {
    Vec lam(static_cast<std::size_t>(dim), 0.0);
    lam[static_cast<std::size_t>(k)] = 1.0;
    c.functionals.push_back(std::move(lam));
  }
  return c;
}

// Manifold -------------------------------------------------------------------

int CornerManifold::find_chart(const Vec& p) const {
  for (std::size_t i = 0; i < charts.size(); ++i)
    if (charts[i].domain.contains(p)) return static_cast<int>(i);
  return -1;
}

Classification classify_point(const CornerManifold& M, const Vec& p, double tol) {
  const int ci = M.find_chart(p);
  if (ci < 0) throw std::domain_error("classify_point: point lies in no chart");
  const CornerChart& ch = M.charts[static_cast<std::size_t>(ci)];
  const std::vector<JetN> J = ch.forward.eval(p, 0);
  Vec u(J.size());
  for (std::size_t i = 0; i < J.size(); ++i) u[i] = J[i].value();
  Classification cls;
  cls.chart = ci;
  cls.active = ch.cone.active_set(u, tol);
  cls.interior = cls.active.empty() && ch.cone.member(u, tol);
  return cls;
}

namespace {

Mat jacobian(const JetOracle& fwd, const Vec& p) {
  const std::vector<JetN> J = fwd.eval(p, 1);
  const int d = static_cast<int>(J.size());
  Mat A(d);
  std::vector<int> alpha(static_cast<std::size_t>(fwd.dim), 0);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < fwd.dim; ++c) {
      std::fill(alpha.begin(), alpha.end(), 0);
      alpha[static_cast<std::size_t>(c)] = 1;
      A.at(r, c) = J[static_cast<std::size_t>(r)].coeff(alpha);
    }
  return A;
}

}  // namespace

InvarianceReport check_interior_invariance(const CornerManifold& M, int samples,
                                           std::uint64_t seed) {
  InvarianceReport rep;
  rep.min_abs_det = std::numeric_limits<double>::infinity();
  if (M.charts.size() < 2) {
    rep.min_abs_det = 1.0;  // single chart: vacuously valid
    return rep;
  }
  std::mt19937_64 eng(seed);
  // sampling window: union of chart domain bounding boxes
  Vec lo = M.charts[0].domain.bounds.lo, hi = M.charts[0].domain.bounds.hi;
  for (const CornerChart& ch : M.charts)
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], ch.domain.bounds.lo[i]);
      hi[i] = std::max(hi[i], ch.domain.bounds.hi[i]);
    }
  int attempts = 0;
  while (rep.checked < samples && attempts < samples * 200) {
    ++attempts;
    Vec p(lo.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = lo[i] + (hi[i] - lo[i]) * portable_uniform(eng);
    // need at least two covering charts and an interior point in the first
    std::vector<int> covering;
    for (std::size_t ci = 0; ci < M.charts.size(); ++ci)
      if (M.charts[ci].domain.contains(p)) covering.push_back(static_cast<int>(ci));
    if (covering.size() < 2) continue;
    const CornerChart& ca = M.charts[static_cast<std::size_t>(covering[0])];
    Vec ua(static_cast<std::size_t>(M.dim));
    {
      const std::vector<JetN> J = ca.forward.eval(p, 0);
      for (std::size_t i = 0; i < ua.size(); ++i) ua[i] = J[i].value();
    }
    if (!ca.cone.interior(ua, 1e-9)) continue;
    ++rep.checked;
    ++rep.samples;
    for (std::size_t k = 1; k < covering.size(); ++k) {
      const CornerChart& cb = M.charts[static_cast<std::size_t>(covering[k])];
      Vec ub(static_cast<std::size_t>(M.dim));
      const std::vector<JetN> J = cb.forward.eval(p, 0);
      for (std::size_t i = 0; i < ub.size(); ++i) ub[i] = J[i].value();
      if (!cb.cone.interior(ub, 1e-12)) ++rep.violations;
      // coordinate-change Jacobian d(phi_b o phi_a^-1) = J_b J_a^-1
      const Mat Ja = jacobian(ca.forward, p);
      const Mat Jb = jacobian(cb.forward, p);
      double det = 0.0;
      bool singular = false;
      try {
        det = mat_det(mat_mul(Jb, mat_inverse(Ja)));
      } catch (const std::domain_error&) {
        singular = true;
      }
      if (singular || !(std::abs(det) > 1e-12))
        ++rep.violations;
      else
        rep.min_abs_det = std::min(rep.min_abs_det, std::abs(det));
    }
  }
  return rep;
}

// Tangent machinery -----------------------------------------------------------

int HigherTangentPoint::level() const {
  int n = 0;
  std::size_t c = comps.size();
  while (c > 1) {
    c >>= 1;
    ++n;
  }
  return n;
}

HigherTangentPoint tangent_map(const ManifoldMap& f, const HigherTangentPoint& x, int level) {
  if (static_cast<int>(x.comps.size()) != (1 << level))
    throw std::invalid_argument("tangent_map: component count does not match level");
  const CornerChart& ci = f.src->charts[static_cast<std::size_t>(x.chart)];
  // base point in ambient coordinates
  const Vec base_amb = [&] {
    const std::vector<JetN> J = ci.inverse.eval(x.comps[0], 0);
    Vec p(J.size());
    for (std::size_t i = 0; i < J.size(); ++i) p[i] = J[i].value();
    return p;
  }();
  const Vec image_amb = [&] {
    const std::vector<JetN> J = f.map.eval(base_amb, 0);
    Vec p(J.size());
    for (std::size_t i = 0; i < J.size(); ++i) p[i] = J[i].value();
    return p;
  }();
  const int cj = f.dst->find_chart(image_amb);
  if (cj < 0) throw std::invalid_argument("tangent_map: image point lies in no chart");
  // interior preservation contract, checked at the base point
  const Classification src_cls = classify_point(*f.src, base_amb);
  if (src_cls.interior) {
    const Classification dst_cls = classify_point(*f.dst, image_amb);
    if (!dst_cls.interior)
      throw std::invalid_argument("tangent_map: interior point mapped to the boundary");
  }
  // coordinate representation phi_j o f o phi_i^-1, lifted `level` times
  JetOracle rep = oracle_compose(f.dst->charts[static_cast<std::size_t>(cj)].forward,
                                 oracle_compose(f.map, ci.inverse));
  for (int l = 0; l < level; ++l) rep = tangent_lift(rep);
  Vec stacked;
  for (const Vec& c : x.comps) stacked.insert(stacked.end(), c.begin(), c.end());
  const std::vector<JetN> J = rep.eval(stacked, 0);
  HigherTangentPoint out;
  out.chart = cj;
  const int dd = f.dst->dim;
  out.comps.assign(x.comps.size(), Vec(static_cast<std::size_t>(dd), 0.0));
  for (std::size_t block = 0; block < out.comps.size(); ++block)
    for (int i = 0; i < dd; ++i)
      out.comps[block][static_cast<std::size_t>(i)] =
          J[block * static_cast<std::size_t>(dd) + static_cast<std::size_t>(i)].value();
  return out;
}

HigherTangentPoint change_tangent_chart(const CornerManifold& M, const HigherTangentPoint& x,
                                        int target_chart) {
  if (x.level() != 1) throw std::invalid_argument("change_tangent_chart handles level 1");
  const CornerChart& ci = M.charts[static_cast<std::size_t>(x.chart)];
  const CornerChart& cj = M.charts[static_cast<std::size_t>(target_chart)];
  // base point through chart i, then the coordinate-change Jacobian J_j J_i^-1
  const std::vector<JetN> inv = ci.inverse.eval(x.comps[0], 0);
  Vec p(inv.size());
  for (std::size_t i = 0; i < inv.size(); ++i) p[i] = inv[i].value();
  if (!cj.domain.contains(p))
    throw std::domain_error("change_tangent_chart: point not covered by the target chart");
  const Mat Ji = jacobian(ci.forward, p);
  const Mat Jj = jacobian(cj.forward, p);
  const Mat C = mat_mul(Jj, mat_inverse(Ji));
  HigherTangentPoint out;
  out.chart = target_chart;
  out.comps.resize(2);
  {
    const std::vector<JetN> fj = cj.forward.eval(p, 0);
    out.comps[0].resize(fj.size());
    for (std::size_t i = 0; i < fj.size(); ++i) out.comps[0][i] = fj[i].value();
  }
  out.comps[1].assign(static_cast<std::size_t>(M.dim), 0.0);
  for (int r = 0; r < M.dim; ++r)
    for (int c = 0; c < M.dim; ++c)
      out.comps[1][static_cast<std::size_t>(r)] +=
          C.at(r, c) * x.comps[1][static_cast<std::size_t>(c)];
  return out;
}

// Partition of unity ----------------------------------------------------------

JetOracle box_bump_oracle(const Box& b) {
  JetOracle o;
  o.dim = b.dim();
  o.codim = 1;
  o.domain = all_space(b.dim());
  const Box box = b;
  o.eval = [box](const Vec& p, int m) {
    JetN prod = jetn_constant(p, 1.0, m);
    for (int a = 0; a < box.dim(); ++a) {
      const double lo = box.lo[static_cast<std::size_t>(a)];
      const double hi = box.hi[static_cast<std::size_t>(a)];
      // t = (2x - lo - hi)/(hi - lo) maps the box onto [-1,1]
      const JetN x = jetn_coordinate(p, a, m);
      const JetN t = jetn_scale(jetn_shift(jetn_scale(x, 2.0), -lo - hi), 1.0 / (hi - lo));
      const JetN factor = jetn_apply(bump_zeta_jet(t.value(), m), t);
      prod = jetn_mul(prod, factor);
    }
    return std::vector<JetN>{prod};
  };
  return o;
}

std::vector<JetN> PartitionOfUnity::member_jets(const Vec& p, int order) const {
  std::vector<JetN> out;
  out.reserve(bumps.size());
  for (const JetOracle& b : bumps) out.push_back(b.jet(p, order));
  return out;
}

PartitionOfUnity partition_of_unity(const CornerManifold& M, const std::vector<Box>& cover,
                                    int validation_samples, std::uint64_t seed) {
  Domain whole;
  Vec lo = M.charts.at(0).domain.bounds.lo, hi = M.charts.at(0).domain.bounds.hi;
  for (const CornerChart& ch : M.charts)
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], ch.domain.bounds.lo[i]);
      hi[i] = std::max(hi[i], ch.domain.bounds.hi[i]);
    }
  whole.bounds = Box{lo, hi};
  whole.member = [](const Vec&) { return true; };
  return partition_of_unity_on(M, whole, cover, validation_samples, seed);
}

PartitionOfUnity partition_of_unity_on(const CornerManifold& M, const Domain& region,
                                       const std::vector<Box>& cover, int validation_samples,
                                       std::uint64_t seed) {
  if (cover.empty()) throw std::invalid_argument("partition_of_unity: empty cover");
  PartitionOfUnity pu;
  pu.cover = cover;
  std::vector<JetOracle> raw;
  raw.reserve(cover.size());
  for (const Box& b : cover) raw.push_back(box_bump_oracle(b));

  // validate coverage on sampled region points that lie on the manifold
  std::mt19937_64 eng(seed);
  const Vec& lo = region.bounds.lo;
  const Vec& hi = region.bounds.hi;
  int found = 0, attempts = 0;
  while (found < validation_samples && attempts < validation_samples * 50) {
    ++attempts;
    Vec p(lo.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = lo[i] + (hi[i] - lo[i]) * portable_uniform(eng);
    if (!region.contains(p) || M.find_chart(p) < 0) continue;
    ++found;
    double s = 0.0;
    for (const JetOracle& b : raw) s += b.value(p);
    if (!(s > 1e-14))
      throw std::domain_error("partition_of_unity: cover fails to cover sampled points");
  }

  for (std::size_t i = 0; i < raw.size(); ++i) {
    JetOracle o;
    o.dim = raw[i].dim;
    o.codim = 1;
    o.domain = all_space(raw[i].dim);
    const std::vector<JetOracle> all = raw;
    const std::size_t me = i;
    o.eval = [all, me](const Vec& p, int m) {
      JetN sum = jetn_constant(p, 0.0, m);
      JetN mine = jetn_constant(p, 0.0, m);
      for (std::size_t k = 0; k < all.size(); ++k) {
        const JetN b = all[k].jet(p, m);
        sum = jetn_add(sum, b);
        if (k == me) mine = b;
      }
      return std::vector<JetN>{jetn_mul(mine, jetn_recip(sum))};
    };
    pu.bumps.push_back(std::move(o));
  }
  return pu;
}

// Subdomain extension ----------------------------------------------------------

Vec PatchChart::apply(const Vec& p) const {
  Vec u(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) u[i] = signs[i] * (p[i] - shift[i]);
  return u;
}

Vec PatchChart::apply_inverse(const Vec& u) const {
  Vec p(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) p[i] = shift[i] + signs[i] * u[i];
  return p;
}

CornerSubdomain make_box_subdomain(const Box& L) {
  CornerSubdomain sub;
  sub.box = L;
  const int d = L.dim();
  double min_side = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i)
    min_side = std::min(min_side, L.hi[static_cast<std::size_t>(i)] - L.lo[static_cast<std::size_t>(i)]);
  // largest power of two such that the cubes fit inside the box
  double eps = 1.0;
  while (eps > min_side / 4.0 + 1e-15) eps /= 2.0;

  auto add_patch = [&](const std::vector<int>& face_axes, const std::vector<int>& sides,
                       const std::string& name) {
    BoundaryPatch patch;
    patch.name = name;
    patch.eps = eps;
    Vec m(static_cast<std::size_t>(d));
    patch.phi.signs.assign(static_cast<std::size_t>(d), 1.0);
    patch.phi.shift.assign(static_cast<std::size_t>(d), 0.0);
    std::vector<bool> on_face(static_cast<std::size_t>(d), false);
    for (std::size_t k = 0; k < face_axes.size(); ++k) {
      const int a = face_axes[k];
      on_face[static_cast<std::size_t>(a)] = true;
      if (sides[k] < 0) {
        m[static_cast<std::size_t>(a)] = L.lo[static_cast<std::size_t>(a)];
        patch.phi.signs[static_cast<std::size_t>(a)] = 1.0;
        patch.phi.shift[static_cast<std::size_t>(a)] = L.lo[static_cast<std::size_t>(a)];
      } else {
        m[static_cast<std::size_t>(a)] = L.hi[static_cast<std::size_t>(a)];
        patch.phi.signs[static_cast<std::size_t>(a)] = -1.0;
        patch.phi.shift[static_cast<std::size_t>(a)] = L.hi[static_cast<std::size_t>(a)];
      }
    }
    for (int a = 0; a < d; ++a) {
      if (on_face[static_cast<std::size_t>(a)]) continue;
      m[static_cast<std::size_t>(a)] = 0.5 * (L.lo[static_cast<std::size_t>(a)] +
                                              L.hi[static_cast<std::size_t>(a)]);
      patch.phi.shift[static_cast<std::size_t>(a)] = L.lo[static_cast<std::size_t>(a)];
    }
    patch.point = m;
    const Vec mu = patch.phi.apply(m);
    patch.cube.lo.assign(static_cast<std::size_t>(d), 0.0);
    patch.cube.hi.assign(static_cast<std::size_t>(d), 0.0);
    patch.vbox = patch.cube;
    for (int a = 0; a < d; ++a) {
      const double xa = (std::abs(mu[static_cast<std::size_t>(a)]) < 1e-14)
                            ? eps
                            : mu[static_cast<std::size_t>(a)];
      patch.cube.lo[static_cast<std::size_t>(a)] = xa - eps;
      patch.cube.hi[static_cast<std::size_t>(a)] = xa + eps;
      if (std::abs(mu[static_cast<std::size_t>(a)]) < 1e-14) {
        patch.zero_faces.push_back(a);
        patch.vbox.lo[static_cast<std::size_t>(a)] = -eps / 2.0;
        patch.vbox.hi[static_cast<std::size_t>(a)] = 2.0 * eps;
      } else {
        patch.vbox.lo[static_cast<std::size_t>(a)] = xa - eps;
        patch.vbox.hi[static_cast<std::size_t>(a)] = xa + eps;
      }
    }
    sub.patches.push_back(std::move(patch));
  };

  // face-midpoint patches
  for (int a = 0; a < d; ++a)
    for (int side = -1; side <= 1; side += 2)
      add_patch({a}, {side},
                "face x" + std::to_string(a) + (side < 0 ? "=lo" : "=hi"));
  // corner patches (all sign combinations)
  for (int mask = 0; mask < (1 << d); ++mask) {
    std::vector<int> axes, sides;
    std::string nm = "corner";
    for (int a = 0; a < d; ++a) {
      axes.push_back(a);
      sides.push_back((mask >> a) & 1 ? +1 : -1);
      nm += (sides.back() < 0 ? "-" : "+");
    }
    add_patch(axes, sides, nm);
  }
  return sub;
}

namespace {

Box chart_box_to_ambient(const PatchChart& phi, const Box& b) {
  const int d = static_cast<int>(phi.signs.size());
  Box out;
  out.lo.resize(static_cast<std::size_t>(d));
  out.hi.resize(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    const double p1 = phi.shift[static_cast<std::size_t>(a)] +
                      phi.signs[static_cast<std::size_t>(a)] * b.lo[static_cast<std::size_t>(a)];
    const double p2 = phi.shift[static_cast<std::size_t>(a)] +
                      phi.signs[static_cast<std::size_t>(a)] * b.hi[static_cast<std::size_t>(a)];
    out.lo[static_cast<std::size_t>(a)] = std::min(p1, p2);
    out.hi[static_cast<std::size_t>(a)] = std::max(p1, p2);
  }
  return out;
}

Box shrink_box(const Box& b, double factor) {
  Box out = b;
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    const double c = 0.5 * (b.lo[i] + b.hi[i]);
    const double r = 0.5 * (b.hi[i] - b.lo[i]) * factor;
    out.lo[i] = c - r;
    out.hi[i] = c + r;
  }
  return out;
}

// oracle w -> f(phi^-1(cube_lo + diag(cube_size) w)) on [0,1]^d
JetOracle rescaled_patch_source(const JetOracle& f, const PatchChart& phi, const Box& cube) {
  const int d = f.dim;
  JetOracle o;
  o.dim = d;
  o.codim = f.codim;
  o.max_order = f.max_order;
  o.domain = box_domain(Vec(static_cast<std::size_t>(d), 0.0), Vec(static_cast<std::size_t>(d), 1.0));
  o.eval = [f, phi, cube, d](const Vec& w, int m) {
    // affine inner map: exact jets
    Vec p(static_cast<std::size_t>(d));
    std::vector<JetN> inner;
    inner.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
      const double sz = cube.hi[static_cast<std::size_t>(a)] - cube.lo[static_cast<std::size_t>(a)];
      p[static_cast<std::size_t>(a)] =
          phi.shift[static_cast<std::size_t>(a)] +
          phi.signs[static_cast<std::size_t>(a)] *
              (cube.lo[static_cast<std::size_t>(a)] + sz * w[static_cast<std::size_t>(a)]);
    }
    const std::vector<JetN> J = f.eval(p, m);
    // rescale derivatives: d/dw_a = signs_a * size_a * d/dp_a
    std::vector<JetN> out;
    out.reserve(J.size());
    for (const JetN& Ji : J) {
      JetN r(w, m);
      const MultiIndexSet& set = r.index_set();
      for (int rr = 0; rr < set.size(); ++rr) {
        const MultiIndex& al = set.at(rr);
        double scale = 1.0;
        for (int a = 0; a < d; ++a) {
          const double sz =
              phi.signs[static_cast<std::size_t>(a)] *
              (cube.hi[static_cast<std::size_t>(a)] - cube.lo[static_cast<std::size_t>(a)]);
          for (int rep = 0; rep < al[a]; ++rep) scale *= sz;
        }
        r.coeff_ref(rr) = Ji.coeff(al.exponents) * scale;
      }
      out.push_back(std::move(r));
    }
    return out;
  };
  return o;
}

// pullback of a box-extension through the rescale: p -> Ext((phi(p)-lo)/size)
JetOracle pullback_patch_extension(const JetOracle& ext_eval, const PatchChart& phi,
                                   const Box& cube) {
  const int d = ext_eval.dim;
  JetOracle o;
  o.dim = d;
  o.codim = ext_eval.codim;
  o.max_order = ext_eval.max_order;
  o.domain = all_space(d);
  o.eval = [ext_eval, phi, cube, d](const Vec& p, int m) {
    Vec w(static_cast<std::size_t>(d));
    const Vec u = phi.apply(p);
    for (int a = 0; a < d; ++a) {
      const double sz = cube.hi[static_cast<std::size_t>(a)] - cube.lo[static_cast<std::size_t>(a)];
      w[static_cast<std::size_t>(a)] = (u[static_cast<std::size_t>(a)] -
                                        cube.lo[static_cast<std::size_t>(a)]) / sz;
    }
    const std::vector<JetN> J = ext_eval.eval(w, m);
    std::vector<JetN> out;
    out.reserve(J.size());
    for (const JetN& Ji : J) {
      JetN r(p, m);
      const MultiIndexSet& set = r.index_set();
      for (int rr = 0; rr < set.size(); ++rr) {
        const MultiIndex& al = set.at(rr);
        double scale = 1.0;
        for (int a = 0; a < d; ++a) {
          const double sz =
              phi.signs[static_cast<std::size_t>(a)] /
              (cube.hi[static_cast<std::size_t>(a)] - cube.lo[static_cast<std::size_t>(a)]);
          for (int rep = 0; rep < al[a]; ++rep) scale *= sz;
        }
        r.coeff_ref(rr) = Ji.coeff(al.exponents) * scale;
      }
      out.push_back(std::move(r));
    }
    return out;
  };
  return o;
}

}  // namespace

ManifoldExtension extend_on_manifold(const CornerManifold& M, const CornerSubdomain& L,
                                     const JetOracle& f, int order, ExtendOptions opts) {
  const int d = L.box.dim();
  ManifoldExtension ext;
  ext.subdomain = L;

  if (L.patches.empty()) {
    // no boundary inside: h == 1 and f-bar is f itself on int(L)
    Domain U = box_domain(L.box.lo, L.box.hi);
    U.closed = false;
    ext.extended_domain = U;
    ext.evaluator = f;
    PartitionOfUnity pu;
    pu.cover = {L.box};
    pu.bumps.push_back(constant_oracle(d, 1.0, U));
    ext.partition = std::move(pu);
    return ext;
  }

  // per-patch box extensions of the rescaled restriction
  std::vector<JetOracle> pullbacks;
  std::vector<Box> ambient_vboxes;
  for (const BoundaryPatch& patch : L.patches) {
    for (int a = 0; a < d; ++a) {
      if (patch.cube.lo[static_cast<std::size_t>(a)] < -1e-12)
        throw std::runtime_error("extend_on_manifold: cube does not fit in chart image (patch " +
                                 patch.name + ")");
    }
    const JetOracle src = rescaled_patch_source(f, patch.phi, patch.cube);
    BoxExtension bx = extend_box(src, order, opts);
    pullbacks.push_back(pullback_patch_extension(bx.evaluator, patch.phi, patch.cube));
    ambient_vboxes.push_back(chart_box_to_ambient(patch.phi, patch.vbox));
    ext.patch_extensions.push_back(std::move(bx));
  }

  // cover: int(L), the V_m boxes, and the outside strips of each patch
  std::vector<Box> cover{L.box};
  for (const Box& vb : ambient_vboxes) cover.push_back(vb);
  std::vector<Box> strips;
  for (std::size_t pi = 0; pi < L.patches.size(); ++pi) {
    const BoundaryPatch& patch = L.patches[pi];
    for (int zf : patch.zero_faces) {
      // support strictly outside L so that g vanishes near the seam
      Box strip = patch.vbox;
      strip.lo[static_cast<std::size_t>(zf)] = -patch.eps / 2.0;
      strip.hi[static_cast<std::size_t>(zf)] = -patch.eps / 8.0;
      strips.push_back(chart_box_to_ambient(patch.phi, strip));
    }
  }
  for (const Box& s : strips) cover.push_back(s);

  // advertised U: int(L) together with the shrunk patch cores
  std::vector<Box> cores;
  for (const Box& vb : ambient_vboxes) cores.push_back(shrink_box(vb, 0.9));
  Box bounds = L.box;
  for (const Box& vb : ambient_vboxes)
    for (std::size_t i = 0; i < bounds.lo.size(); ++i) {
      bounds.lo[i] = std::min(bounds.lo[i], vb.lo[i]);
      bounds.hi[i] = std::max(bounds.hi[i], vb.hi[i]);
    }
  const Box Lbox = L.box;
  Domain U;
  U.bounds = bounds;
  U.closed = false;
  U.member = [Lbox, cores](const Vec& p) {
    if (Lbox.contains(p)) return true;
    for (const Box& c : cores)
      if (c.contains(p)) return true;
    return false;
  };
  ext.extended_domain = U;
  ext.partition = partition_of_unity_on(M, U, cover, 200, 42);

  // glued evaluator: (b_L f + sum b_m f_m) / (b_L + sum b_m + sum strips)
  JetOracle fcopy = f;
  const JetOracle bump_L = box_bump_oracle(Lbox);
  std::vector<JetOracle> vbumps, sbumps;
  for (const Box& vb : ambient_vboxes) vbumps.push_back(box_bump_oracle(vb));
  for (const Box& s : strips) sbumps.push_back(box_bump_oracle(s));
  const std::vector<JetOracle> fm = pullbacks;
  JetOracle o;
  o.dim = d;
  o.codim = f.codim;
  o.domain = U;
  o.eval = [fcopy, Lbox, bump_L, vbumps, sbumps, fm](const Vec& p, int m) {
    JetN total = bump_L.jet(p, m);
    std::vector<JetN> numer(static_cast<std::size_t>(fcopy.codim),
                            jetn_constant(p, 0.0, m));
    if (Lbox.contains(p) && total.value() > 0.0) {
      const std::vector<JetN> J = fcopy.eval(p, m);
      for (std::size_t c = 0; c < J.size(); ++c) numer[c] = jetn_mul(total, J[c]);
    }
    for (std::size_t k = 0; k < vbumps.size(); ++k) {
      const JetN b = vbumps[k].jet(p, m);
      total = jetn_add(total, b);
      if (b.value() > 0.0) {
        const std::vector<JetN> J = fm[k].eval(p, m);
        for (std::size_t c = 0; c < J.size(); ++c)
          numer[c] = jetn_add(numer[c], jetn_mul(b, J[c]));
      }
    }
    for (const JetOracle& s : sbumps) total = jetn_add(total, s.jet(p, m));
    const JetN inv = jetn_recip(total);
    for (auto& nc : numer) nc = jetn_mul(nc, inv);
    return numer;
  };
  ext.evaluator = std::move(o);
  return ext;
}

std::vector<ManifoldSeamRow> manifold_seam_fd(const ManifoldExtension& ext, int samples_per_face,
                                              double h, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<ManifoldSeamRow> rows;
  const Box& L = ext.subdomain.box;
  const int d = L.dim();
  for (int a = 0; a < d; ++a) {
    for (int side = -1; side <= 1; side += 2) {
      for (int s = 0; s < samples_per_face; ++s) {
        Vec p(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
          const double lo = L.lo[static_cast<std::size_t>(i)];
          const double hi = L.hi[static_cast<std::size_t>(i)];
          p[static_cast<std::size_t>(i)] = lo + (hi - lo) * (0.2 + 0.6 * portable_uniform(eng));
        }
        p[static_cast<std::size_t>(a)] =
            side < 0 ? L.lo[static_cast<std::size_t>(a)] : L.hi[static_cast<std::size_t>(a)];
        Vec n(static_cast<std::size_t>(d), 0.0);
        n[static_cast<std::size_t>(a)] = side;  // outward normal
        Vec pp(p), pm(p);
        pp[static_cast<std::size_t>(a)] += h * side;
        pm[static_cast<std::size_t>(a)] -= h * side;
        const std::string loc = "x" + std::to_string(a) + (side < 0 ? "=lo" : "=hi") + " #" +
                                std::to_string(s);
        // directional jet at the seam point
        const JetN J = ext.evaluator.jet(p, 2);
        std::vector<Jet1> line;
        for (int i = 0; i < d; ++i) {
          Jet1 li(0.0, 2);
          std::vector<double> c(li.coeffs());
          c[0] = p[static_cast<std::size_t>(i)];
          c[1] = n[static_cast<std::size_t>(i)];
          line.emplace_back(0.0, std::move(c));
        }
        const Jet1 along = jetn_compose_curve(J, std::span<const Jet1>(line.data(), line.size()));
        {
          const double fd1 =
              (ext.evaluator.value(pp) - ext.evaluator.value(pm)) / (2.0 * h);
          rows.push_back({loc, 1, std::abs(fd1 - along.deriv(1))});
        }
        {
          auto dir1 = [&](const Vec& q) {
            const JetN Jq = ext.evaluator.jet(q, 1);
            double acc = 0.0;
            std::vector<int> alpha(static_cast<std::size_t>(d), 0);
            for (int i = 0; i < d; ++i) {
              std::fill(alpha.begin(), alpha.end(), 0);
              alpha[static_cast<std::size_t>(i)] = 1;
              acc += Jq.coeff(alpha) * n[static_cast<std::size_t>(i)];
            }
            return acc;
          };
          const double fd2 = (dir1(pp) - dir1(pm)) / (2.0 * h);
          rows.push_back({loc, 2, std::abs(fd2 - along.deriv(2))});
        }
      }
    }
  }
  return rows;
}

}  // namespace cornerext
