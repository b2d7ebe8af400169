#include "cornerext/extend.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

namespace cornerext {

namespace {

JetN rebase(const JetN& j, const Vec& base) {
  JetN r(base, j.order());
  for (int i = 0; i < j.index_set().size(); ++i) r.coeff_ref(i) = j.coeff(i);
  return r;
}


double max_raw_mismatch(const std::vector<JetN>& a, const std::vector<JetN>& b, int upto) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const MultiIndexSet& set = a[i].index_set();
    for (int r = 0; r < set.size(); ++r) {
      if (set.at(r).degree() > upto) continue;
      const double fa = set.at(r).factorial();
      m = std::max(m, std::abs(a[i].coeff(r) - b[i].coeff(r)) * fa);
    }
  }
  return m;
}

}  // namespace

// Interval extension ----------------------------------------------------

IntervalExtension extend_interval(const JetOracle& f, int order, ExtendOptions opts) {
  if (f.dim != 1) throw std::invalid_argument("extend_interval needs a 1-D source");
  IntervalExtension ext;
  ext.source = f;
  ext.order = order;
  ext.degenerate = (order == 0);
  TargetJet t0 = TargetJet::from_oracle(f, 0.0, order);
  TargetJet t1 = TargetJet::from_oracle(f, 1.0, order);
  if (opts.shared_target_norms) {
    ext.left = realize_with_certificate(t0, choose_scales_from_norms(*opts.shared_target_norms));
    ext.right = realize_with_certificate(t1, choose_scales_from_norms(*opts.shared_target_norms));
  } else {
    ext.left = realize(t0);
    ext.right = realize(t1);
  }

  const JetOracle src = f;
  const JetOracle lo = ext.left.evaluator;
  const JetOracle hi = ext.right.evaluator;
  JetOracle o;
  o.dim = 1;
  o.codim = f.codim;
  o.max_order = f.max_order;
  o.domain = all_space(1);
  o.eval = [src, lo, hi](const Vec& p, int m) {
    const double x = p[0];
    if (x < 0.0) return lo.eval(p, m);
    if (x > 1.0) {
      std::vector<JetN> jets = hi.eval(Vec{x - 1.0}, m);
      for (auto& j : jets) j = rebase(j, p);
      return jets;
    }
    return src.eval(p, m);
  };
  ext.evaluator = std::move(o);
  return ext;
}

std::vector<JetN> IntervalExtension::forced_jets(const Vec& p, int m, int region) const {
  if (region < 0) return left.evaluator.eval(p, m);
  if (region > 0) {
    std::vector<JetN> jets = right.evaluator.eval(Vec{p[0] - 1.0}, m);
    for (auto& j : jets) j = rebase(j, p);
    return jets;
  }
  return source.eval(p, m);
}

// Box extension ----------------------------------------------------------

struct BoxImpl {
  JetOracle source;
  int N = 0;
  std::vector<AxisExtensionRecord> recs;
  bool memoize = false;
  mutable std::unordered_map<std::string, std::vector<JetN>> cache;

  // Evaluate using layers 0..level (level = -1 is the raw source). region,
  // when non-null, forces the branch per axis; otherwise coordinates decide.
  std::vector<JetN> eval(int level, const Vec& p, int m, const std::vector<int>* region) const {
    if (level < 0) return source.eval(p, m);
    const AxisExtensionRecord& rec = recs[static_cast<std::size_t>(level)];
    const int a = rec.axis;
    const double x = p[static_cast<std::size_t>(a)];
    int side;
    if (region) {
      side = (*region)[static_cast<std::size_t>(a)];
    } else {
      side = (x < 0.0) ? -1 : (x > 1.0 ? +1 : 0);
    }
    if (side == 0) return eval(level - 1, p, m, region);

    const ScaleCertificate& cert = (side < 0) ? rec.lo : rec.hi;
    const double face = (side < 0) ? 0.0 : 1.0;
    const double s = x - face;
    Vec q(p);
    q[static_cast<std::size_t>(a)] = face;

    std::vector<JetN> J = boundary_jets(level, q, m + N, region, a);

    // u_k jets of the cutoff factors at the strip coordinate
    std::vector<Jet1> u;
    u.reserve(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k)
      u.push_back(scaled_xi_power_jet(k, cert.scales[static_cast<std::size_t>(k)], s, m));

    // f-bar coeff(gamma) = sum_k J[beta + k e_a] * u_k[gamma_a],
    // beta = gamma with the axis entry zeroed.
    std::vector<JetN> out;
    out.reserve(J.size());
    std::vector<int> alpha;
    for (const JetN& Ji : J) {
      JetN r(p, m);
      const MultiIndexSet& set = r.index_set();
      for (int rr = 0; rr < set.size(); ++rr) {
        const MultiIndex& g = set.at(rr);
        const int j = g[a];
        alpha = g.exponents;
        double acc = 0.0;
        for (int k = 0; k <= N; ++k) {
          const double uk = u[static_cast<std::size_t>(k)].coeff(j);
          if (uk == 0.0) continue;
          alpha[static_cast<std::size_t>(a)] = k;
          acc += Ji.coeff(alpha) * uk;
        }
        r.coeff_ref(rr) = acc;
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<JetN> boundary_jets(int level, const Vec& q, int m, const std::vector<int>* region,
                                  int axis) const {
    std::vector<int> inner_region;
    const std::vector<int>* inner = nullptr;
    if (region) {
      inner_region = *region;
      inner_region[static_cast<std::size_t>(axis)] = 0;
      inner = &inner_region;
    }
    if (!memoize || region) return eval(level - 1, q, m, inner);
    std::string key(reinterpret_cast<const char*>(q.data()), q.size() * sizeof(double));
    key.append(reinterpret_cast<const char*>(&m), sizeof(int));
    key.append(reinterpret_cast<const char*>(&level), sizeof(int));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<JetN> jets = eval(level - 1, q, m, nullptr);
    cache.emplace(std::move(key), jets);
    return jets;
  }
};

BoxExtension extend_box(const JetOracle& f, int order, ExtendOptions opts) {
  const int d = f.dim;
  if (d < 1) throw std::invalid_argument("extend_box needs d >= 1");
  std::vector<int> axes = opts.axis_order;
  if (axes.empty()) {
    axes.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) axes[static_cast<std::size_t>(i)] = i;
  }
  if (static_cast<int>(axes.size()) != d) throw std::invalid_argument("axis_order must be a permutation");

  auto impl = std::make_shared<BoxImpl>();
  impl->source = f;
  impl->N = order;
  impl->memoize = opts.memoize;

  std::vector<bool> extended(static_cast<std::size_t>(d), false);
  for (int a : axes) {
    // certificate targets: sup over a face grid of the raw normal derivatives
    const int off_dims = d - 1;
    const int per_dim = (off_dims <= 1) ? opts.face_grid_1d : opts.face_grid_nd;
    std::vector<int> other;
    for (int i = 0; i < d; ++i)
      if (i != a) other.push_back(i);

    for (int side = 0; side < 2; ++side) {
      std::vector<double> norms(static_cast<std::size_t>(order) + 1, 0.0);
      if (opts.shared_target_norms) {
        norms = *opts.shared_target_norms;
      } else {
        const int level = static_cast<int>(impl->recs.size()) - 1;
        std::vector<int> counter(other.size(), 0);
        const int total = off_dims == 0 ? 1 : [&] {
          int t = 1;
          for (int i = 0; i < off_dims; ++i) t *= per_dim;
          return t;
        }();
        for (int it = 0; it < total; ++it) {
          Vec q(static_cast<std::size_t>(d), 0.0);
          q[static_cast<std::size_t>(a)] = side == 0 ? 0.0 : 1.0;
          int rem = it;
          for (std::size_t oi = 0; oi < other.size(); ++oi) {
            const int axis = other[oi];
            const int idx = rem % per_dim;
            rem /= per_dim;
            const double lo = extended[static_cast<std::size_t>(axis)] ? -0.5 : 0.0;
            const double hi = extended[static_cast<std::size_t>(axis)] ? 1.5 : 1.0;
            q[static_cast<std::size_t>(axis)] =
                per_dim == 1 ? 0.5 * (lo + hi)
                             : lo + (hi - lo) * static_cast<double>(idx) / (per_dim - 1);
          }
          const std::vector<JetN> J = impl->eval(level, q, order, nullptr);
          std::vector<int> alpha(static_cast<std::size_t>(d), 0);
          for (int k = 0; k <= order; ++k) {
            alpha[static_cast<std::size_t>(a)] = k;
            double fact = 1.0;
            for (int i = 2; i <= k; ++i) fact *= i;
            for (const JetN& Ji : J)
              norms[static_cast<std::size_t>(k)] =
                  std::max(norms[static_cast<std::size_t>(k)], std::abs(Ji.coeff(alpha)) * fact);
          }
        }
      }
      if (side == 0) {
        AxisExtensionRecord rec;
        rec.axis = a;
        rec.lo = choose_scales_from_norms(norms);
        impl->recs.push_back(std::move(rec));
      } else {
        impl->recs.back().hi = choose_scales_from_norms(norms);
      }
    }
    extended[static_cast<std::size_t>(a)] = true;
  }

  BoxExtension ext;
  ext.source = f;
  ext.order = order;
  ext.degenerate = (order == 0);
  ext.records = impl->recs;
  ext.impl_ = impl;
  JetOracle o;
  o.dim = d;
  o.codim = f.codim;
  o.domain = all_space(d);
  if (f.max_order != std::numeric_limits<int>::max()) o.max_order = f.max_order - d * order;
  const int top = static_cast<int>(impl->recs.size()) - 1;
  o.eval = [impl, top](const Vec& p, int m) { return impl->eval(top, p, m, nullptr); };
  ext.evaluator = std::move(o);
  return ext;
}

std::vector<JetN> BoxExtension::forced_jets(const Vec& p, int m,
                                            const std::vector<int>* region) const {
  return impl_->eval(static_cast<int>(impl_->recs.size()) - 1, p, m, region);
}

// Currying ----------------------------------------------------------------

CurriedView curry(const JetOracle& f, int split) {
  if (split < 1 || split >= f.dim) throw std::invalid_argument("curry: split out of range");
  return CurriedView{f, split};
}

JetOracle CurriedView::at(const Vec& x_prefix) const {
  if (static_cast<int>(x_prefix.size()) != split)
    throw std::invalid_argument("curried prefix has wrong length");
  const JetOracle src = source;
  const int d = source.dim;
  const int split_ = split;
  JetOracle o;
  o.dim = d - split_;
  o.codim = source.codim;
  o.max_order = source.max_order;
  Vec lo(source.domain.bounds.lo.begin() + split_, source.domain.bounds.lo.end());
  Vec hi(source.domain.bounds.hi.begin() + split_, source.domain.bounds.hi.end());
  o.domain = box_domain(std::move(lo), std::move(hi));
  Vec prefix = x_prefix;
  o.eval = [src, prefix, split_, d](const Vec& y, int m) {
    Vec p(prefix);
    p.insert(p.end(), y.begin(), y.end());
    const std::vector<JetN> J = src.eval(p, m);
    std::vector<JetN> out;
    out.reserve(J.size());
    std::vector<int> alpha(static_cast<std::size_t>(d), 0);
    for (const JetN& Ji : J) {
      JetN r(y, m);
      const MultiIndexSet& set = r.index_set();
      for (int rr = 0; rr < set.size(); ++rr) {
        const MultiIndex& b = set.at(rr);
        std::fill(alpha.begin(), alpha.begin() + split_, 0);
        for (int i = split_; i < d; ++i)
          alpha[static_cast<std::size_t>(i)] = b[i - split_];
        r.coeff_ref(rr) = Ji.coeff(alpha);
      }
      out.push_back(std::move(r));
    }
    return out;
  };
  return o;
}

// Reports -----------------------------------------------------------------

std::vector<SeamMismatch> seam_smoothness_report(const IntervalExtension& ext, int k) {
  std::vector<SeamMismatch> rows;
  {
    const auto out = ext.forced_jets(Vec{0.0}, k, -1);
    const auto in = ext.forced_jets(Vec{0.0}, k, 0);
    rows.push_back({"x=0", max_raw_mismatch(out, in, k)});
  }
  {
    const auto out = ext.forced_jets(Vec{1.0}, k, +1);
    const auto in = ext.forced_jets(Vec{1.0}, k, 0);
    rows.push_back({"x=1", max_raw_mismatch(out, in, k)});
  }
  return rows;
}

std::vector<SeamMismatch> seam_smoothness_report(const BoxExtension& ext, int k,
                                                 int face_samples) {
  std::vector<SeamMismatch> rows;
  const int d = ext.source.dim;
  for (const AxisExtensionRecord& rec : ext.records) {
    for (int side = -1; side <= 1; side += 2) {
      const double face = side < 0 ? 0.0 : 1.0;
      double worst = 0.0;
      std::vector<int> region(static_cast<std::size_t>(d), 0);
      region[static_cast<std::size_t>(rec.axis)] = side;
      // sample the face over the unit box in the other variables
      std::vector<int> other;
      for (int i = 0; i < d; ++i)
        if (i != rec.axis) other.push_back(i);
      int total = 1;
      for (std::size_t i = 0; i < other.size(); ++i) total *= face_samples;
      for (int it = 0; it < total; ++it) {
        Vec q(static_cast<std::size_t>(d), 0.0);
        q[static_cast<std::size_t>(rec.axis)] = face;
        int rem = it;
        for (std::size_t oi = 0; oi < other.size(); ++oi) {
          const int idx = rem % face_samples;
          rem /= face_samples;
          q[static_cast<std::size_t>(other[oi])] =
              face_samples == 1 ? 0.5
                                : static_cast<double>(idx) / (face_samples - 1);
        }
        const auto out = ext.forced_jets(q, k, &region);
        const auto in = ext.forced_jets(q, k, nullptr);
        worst = std::max(worst, max_raw_mismatch(out, in, k));
      }
      rows.push_back({std::string("x") + std::to_string(rec.axis) + "=" +
                          (side < 0 ? "0" : "1"),
                      worst});
    }
  }
  return rows;
}

namespace {

double pair_rate_max(const std::array<double, 3>& steps, const std::array<double, 3>& errs) {
  double best = -1e9;
  for (int i = 0; i < 2; ++i) {
    const double e1 = std::max(errs[static_cast<std::size_t>(i)], 1e-14);
    const double e2 = std::max(errs[static_cast<std::size_t>(i + 1)], 1e-14);
    const double r = std::log10(e1 / e2) /
                     std::log10(steps[static_cast<std::size_t>(i)] / steps[static_cast<std::size_t>(i + 1)]);
    best = std::max(best, r);
  }
  return best;
}

}  // namespace

FdRateReport seam_fd_rate(const IntervalExtension& ext, double seam, int k) {
  if (k < 1 || k > 2) throw std::invalid_argument("seam_fd_rate supports k in {1,2}");
  FdRateReport rep;
  rep.k = k;
  const JetN at_seam = ext.evaluator.jet(Vec{seam}, k);
  rep.max_error = 0.0;
  const Jet1 seam_jet = jetn_to_jet1(at_seam);
  const double predicted = seam_jet.deriv(k);
  for (std::size_t i = 0; i < rep.steps.size(); ++i) {
    const double h = rep.steps[i];
    double fd;
    if (k == 1) {
      const double fp = ext.evaluator.value(Vec{seam + h});
      const double fm = ext.evaluator.value(Vec{seam - h});
      fd = (fp - fm) / (2.0 * h);
    } else {
      const Jet1 jp = jetn_to_jet1(ext.evaluator.jet(Vec{seam + h}, 1));
      const Jet1 jm = jetn_to_jet1(ext.evaluator.jet(Vec{seam - h}, 1));
      fd = (jp.deriv(1) - jm.deriv(1)) / (2.0 * h);
    }
    rep.errors[i] = std::abs(fd - predicted);
    rep.max_error = std::max(rep.max_error, rep.errors[i]);
  }
  rep.observed_order = pair_rate_max(rep.steps, rep.errors);
  return rep;
}

std::vector<StraddleRow> straddle_report(const BoxExtension& ext, double dist, int max_order) {
  std::vector<StraddleRow> rows;
  const int d = ext.source.dim;
  const double face_samples[5] = {0.1, 0.3, 0.5, 0.7, 0.9};

  auto check_point = [&](const Vec& p, const std::vector<int>& region, const std::string& where) {
    // straddle pair: p +- dist along the outward direction given by region
    Vec out_pt(p), in_pt(p);
    double norm = 0.0;
    for (int i = 0; i < d; ++i) norm += region[static_cast<std::size_t>(i)] != 0 ? 1.0 : 0.0;
    norm = std::sqrt(norm);
    for (int i = 0; i < d; ++i) {
      const double step = dist * region[static_cast<std::size_t>(i)] / norm;
      out_pt[static_cast<std::size_t>(i)] += step;
      in_pt[static_cast<std::size_t>(i)] -= step;
    }
    bool finite = true;
    for (const JetN& j : ext.forced_jets(out_pt, max_order, nullptr)) finite = finite && j.finite();
    for (const JetN& j : ext.forced_jets(in_pt, max_order, nullptr)) finite = finite && j.finite();
    const auto lim_out = ext.forced_jets(p, max_order, &region);
    const auto lim_in = ext.forced_jets(p, max_order, nullptr);
    rows.push_back({where, max_raw_mismatch(lim_out, lim_in, max_order), finite});
  };

  // faces
  for (const AxisExtensionRecord& rec : ext.records) {
    for (int side = -1; side <= 1; side += 2) {
      std::vector<int> region(static_cast<std::size_t>(d), 0);
      region[static_cast<std::size_t>(rec.axis)] = side;
      std::vector<int> other;
      for (int i = 0; i < d; ++i)
        if (i != rec.axis) other.push_back(i);
      int total = 1;
      for (std::size_t i = 0; i < other.size(); ++i) total *= 5;
      for (int it = 0; it < total; ++it) {
        Vec q(static_cast<std::size_t>(d), 0.0);
        q[static_cast<std::size_t>(rec.axis)] = side < 0 ? 0.0 : 1.0;
        int rem = it;
        std::string loc = "face x" + std::to_string(rec.axis) + (side < 0 ? "=0" : "=1") + " @";
        for (std::size_t oi = 0; oi < other.size(); ++oi) {
          const double t = face_samples[rem % 5];
          rem /= 5;
          q[static_cast<std::size_t>(other[oi])] = t;
          loc += " " + std::to_string(t);
        }
        check_point(q, region, loc);
      }
    }
  }
  // corners (all sign combinations over extended axes)
  const int n_rec = static_cast<int>(ext.records.size());
  for (int mask = 0; mask < (1 << n_rec); ++mask) {
    std::vector<int> region(static_cast<std::size_t>(d), 0);
    Vec q(static_cast<std::size_t>(d), 0.5);
    for (int r = 0; r < n_rec; ++r) {
      const int axis = ext.records[static_cast<std::size_t>(r)].axis;
      const int side = (mask >> r) & 1 ? +1 : -1;
      region[static_cast<std::size_t>(axis)] = side;
      q[static_cast<std::size_t>(axis)] = side < 0 ? 0.0 : 1.0;
    }
    std::string loc = "corner (";
    for (int i = 0; i < d; ++i) loc += (i ? "," : "") + std::to_string(q[static_cast<std::size_t>(i)]);
    loc += ")";
    check_point(q, region, loc);
  }
  return rows;
}

}  // namespace cornerext
