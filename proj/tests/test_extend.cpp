#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cornerext/extend.hpp"

using namespace cornerext;

namespace {

std::mt19937_64 test_eng(42);
double rnd01() { return static_cast<double>(test_eng() >> 11) * 0x1.0p-53; }

}  // namespace

TEST_CASE("restriction identity is bit-exact (interval)") {
  for (const char* name : {"sin", "exp", "runge", "poly5"}) {
    const JetOracle f = named_interval_source(name);
    const IntervalExtension ext = extend_interval(f, 6);
    for (int i = 0; i < 1000; ++i) {
      const double x = rnd01();
      const double lhs = ext.evaluator.value(Vec{x});
      const double rhs = f.value(Vec{x});
      CHECK(lhs == rhs);  // same code path, identical bits
    }
  }
}

TEST_CASE("constant source extends to the constant") {
  const IntervalExtension ext = extend_interval(named_interval_source("const5"), 6);
  for (double x : {-2.0, -0.5, 0.0, 0.3, 1.0, 1.7, 4.0})
    CHECK(ext.evaluator.value(Vec{x}) == 5.0);
  for (const SeamMismatch& row : seam_smoothness_report(ext, 6)) CHECK(row.mismatch == 0.0);
}

TEST_CASE("identity source: left strip equals x on the plateau") {
  const IntervalExtension ext = extend_interval(named_interval_source("linear"), 6);
  const double c1 = ext.left.certificate.scales[1];
  const double x = -1.0 / (4.0 * c1);
  CHECK(ext.evaluator.value(Vec{x}) == doctest::Approx(x).epsilon(1e-15));
}

TEST_CASE("one-sided seam jets match the source jets") {
  for (const char* name : {"sin", "exp", "runge", "poly5"}) {
    const IntervalExtension ext = extend_interval(named_interval_source(name), 6);
    for (const SeamMismatch& row : seam_smoothness_report(ext, 6)) {
      INFO(name, " seam ", row.seam);
      CHECK(row.mismatch <= 1e-8);
    }
  }
}

TEST_CASE("negative control: truncated left realization shows at order 3") {
  IntervalExtension ext = extend_interval(named_interval_source("sin"), 6);
  // rebuild the left branch from a target with the orders >= 3 discarded
  TargetJet trunc = ext.left.target;
  for (int k = 3; k <= trunc.order(); ++k)
    for (double& v : trunc.values[static_cast<std::size_t>(k)]) v = 0.0;
  ext.left = realize_with_certificate(trunc, ext.left.certificate);
  const auto rows = seam_smoothness_report(ext, 3);
  CHECK(rows[0].mismatch > 0.5);  // |sin'''(0)| = 1 was dropped
  CHECK(rows[1].mismatch <= 1e-8);
}

TEST_CASE("FD convergence across x = 0") {
  for (const char* name : {"sin", "exp", "runge", "poly5"}) {
    const IntervalExtension ext = extend_interval(named_interval_source(name), 6);
    for (int k = 1; k <= 2; ++k) {
      const FdRateReport rep = seam_fd_rate(ext, 0.0, k);
      INFO(name, " k=", k, " errors ", rep.errors[0], " ", rep.errors[1], " ", rep.errors[2]);
      const bool ok = rep.observed_order >= 1.95 || rep.max_error <= 1e-10;
      CHECK(ok);
    }
  }
}

TEST_CASE("linearity in fixed-certificate mode") {
  const JetOracle f = named_interval_source("sin");
  const JetOracle g = named_interval_source("poly5");
  const double a = 1.75;
  const JetOracle combo = oracle_add(oracle_scale(f, a), g);
  // shared bound from the combined targets
  std::vector<double> bound(7, 0.0);
  for (double pt : {0.0, 1.0}) {
    const TargetJet tf = TargetJet::from_oracle(f, pt, 6);
    const TargetJet tg = TargetJet::from_oracle(g, pt, 6);
    const TargetJet tc = TargetJet::from_oracle(combo, pt, 6);
    for (int k = 0; k <= 6; ++k)
      bound[static_cast<std::size_t>(k)] =
          std::max({bound[static_cast<std::size_t>(k)], tf.sup_norm(k), tg.sup_norm(k), tc.sup_norm(k)});
  }
  ExtendOptions opts;
  opts.shared_target_norms = bound;
  const IntervalExtension ef = extend_interval(f, 6, opts);
  const IntervalExtension eg = extend_interval(g, 6, opts);
  const IntervalExtension ec = extend_interval(combo, 6, opts);
  for (double x : {-1.3, -0.4, -0.02, 0.3, 0.9, 1.1, 1.8}) {
    const double lhs = ec.evaluator.value(Vec{x});
    const double rhs = a * ef.evaluator.value(Vec{x}) + eg.evaluator.value(Vec{x});
    CHECK(std::abs(lhs - rhs) <= 4.0 * 2.22e-16 * (std::abs(lhs) + 1.0));
  }
}

TEST_CASE("box extension: restriction, affine strip, seams") {
  const JetOracle f = named_box_source("sum2d");
  const BoxExtension ext = extend_box(f, 4);
  // bit-exact restriction
  for (int i = 0; i < 1000; ++i) {
    const Vec p{rnd01(), rnd01()};
    CHECK(ext.evaluator.value(p) == f.value(p));
  }
  // axis-0 strip of an affine source reproduces the affine values on the plateau
  const double c1 = ext.records[0].lo.scales[1];
  const double x = -std::min(0.01, 1.0 / (4.0 * c1));
  CHECK(ext.evaluator.value(Vec{x, 0.5}) == doctest::Approx(x + 0.5).epsilon(1e-14));
  for (const SeamMismatch& row : seam_smoothness_report(ext, 4)) {
    INFO(row.seam);
    CHECK(row.mismatch <= 1e-10);
  }
}

TEST_CASE("box extension of exp(x+y): straddle continuity at every face and corner") {
  const BoxExtension ext = extend_box(named_box_source("exp2d"), 4);
  for (const StraddleRow& row : straddle_report(ext, 1e-4, 4)) {
    INFO(row.location);
    CHECK(row.finite);
    CHECK(row.mismatch <= 1e-6);
  }
}

TEST_CASE("box extension d=1 equals extend_interval") {
  const JetOracle f = named_interval_source("exp");
  const IntervalExtension ei = extend_interval(f, 5);
  const BoxExtension eb = extend_box(f, 5);
  for (double x : {-1.5, -0.4, 0.0, 0.3, 1.0, 1.9}) {
    CHECK(eb.evaluator.value(Vec{x}) == ei.evaluator.value(Vec{x}));
  }
}

TEST_CASE("axis order is an explicit parameter") {
  ExtendOptions opts;
  opts.axis_order = {1, 0};
  const BoxExtension ext = extend_box(named_box_source("exp2d"), 4, opts);
  CHECK(ext.records[0].axis == 1);
  CHECK(ext.records[1].axis == 0);
  // restriction still exact
  for (int i = 0; i < 100; ++i) {
    const Vec p{rnd01(), rnd01()};
    CHECK(ext.evaluator.value(p) == named_box_source("exp2d").value(p));
  }
}

TEST_CASE("currying: exactness, uncurry round trip, jets") {
  const JetOracle f = named_box_source("prod2d");
  const CurriedView cv = curry(f, 1);
  // f^(x)(y) bit-exact
  for (int i = 0; i < 100; ++i) {
    const double x = rnd01(), y = rnd01();
    const JetOracle slice = cv.at(Vec{x});
    CHECK(slice.value(Vec{y}) == f.value(Vec{x, y}));
  }
  // curry at x = 2 of f(x,y) = xy is y -> 2y
  const JetOracle twoy = cv.at(Vec{2.0});
  CHECK(twoy.value(Vec{0.3}) == doctest::Approx(0.6));
  const Jet1 tj = jetn_to_jet1(twoy.jet(Vec{0.3}, 2));
  CHECK(tj.deriv(1) == doctest::Approx(2.0));
  CHECK(tj.deriv(2) == doctest::Approx(0.0));
  // jets: the y-jet of f^(x) equals the (0,.)-slice of the full jet
  const JetOracle slice = cv.at(Vec{0.4});
  const JetN part = slice.jet(Vec{0.7}, 3);
  const JetN full = f.jet(Vec{0.4, 0.7}, 3);
  for (int k = 0; k <= 3; ++k) {
    const int beta[1] = {k};
    const int alpha[2] = {0, k};
    CHECK(part.coeff(std::span<const int>(beta, 1)) ==
          full.coeff(std::span<const int>(alpha, 2)));
  }
}

TEST_CASE("order-0 extension is continuous constant-jet gluing, flagged") {
  const IntervalExtension ext = extend_interval(named_interval_source("exp"), 0);
  CHECK(ext.degenerate);
  CHECK(ext.evaluator.value(Vec{-0.5}) == doctest::Approx(1.0));   // exp(0)
  CHECK(ext.evaluator.value(Vec{1.5}) == doctest::Approx(std::exp(1.0)));
  CHECK(ext.evaluator.value(Vec{0.25}) == std::exp(0.25));
}

TEST_CASE("sources not evaluable at an endpoint are rejected") {
  JetOracle half_open;
  half_open.dim = 1;
  half_open.codim = 1;
  half_open.domain = box_domain(Vec{0.0}, Vec{1.0});
  half_open.eval = [](const Vec& p, int m) {
    if (p[0] <= 0.0) throw std::domain_error("not evaluable at 0");
    const JetN x = jetn_coordinate(p, 0, m);
    return std::vector<JetN>{x};
  };
  CHECK_THROWS_AS(extend_interval(half_open, 4), std::domain_error);
}

TEST_CASE("opt-in memoization changes nothing but reuse") {
  ExtendOptions memo;
  memo.memoize = true;
  const BoxExtension plain = extend_box(named_box_source("exp2d"), 3);
  const BoxExtension cached = extend_box(named_box_source("exp2d"), 3, memo);
  for (const Vec& p : {Vec{-0.3, 0.5}, Vec{0.5, -0.2}, Vec{-0.1, -0.1}, Vec{1.2, 1.3}}) {
    const JetN a = plain.evaluator.jet(p, 3);
    const JetN b = cached.evaluator.jet(p, 3);
    const JetN b2 = cached.evaluator.jet(p, 3);  // second call hits the cache
    for (int r = 0; r < a.index_set().size(); ++r) {
      CHECK(a.coeff(r) == b.coeff(r));
      CHECK(b.coeff(r) == b2.coeff(r));
    }
  }
}

TEST_CASE("three-dimensional box extension") {
  JetOracle f;
  f.dim = 3;
  f.codim = 1;
  f.domain = box_domain(Vec{0.0, 0.0, 0.0}, Vec{1.0, 1.0, 1.0});
  f.eval = [](const Vec& p, int m) {
    // f = x + y*z
    const JetN x = jetn_coordinate(p, 0, m);
    const JetN y = jetn_coordinate(p, 1, m);
    const JetN z = jetn_coordinate(p, 2, m);
    return std::vector<JetN>{jetn_add(x, jetn_mul(y, z))};
  };
  const BoxExtension ext = extend_box(f, 3);
  for (int i = 0; i < 200; ++i) {
    const Vec p{rnd01(), rnd01(), rnd01()};
    CHECK(ext.evaluator.value(p) == f.value(p));
  }
  // a point outside in all three axes evaluates finitely and the (multi-)
  // affine structure survives on the plateau region
  const JetN j = ext.evaluator.jet(Vec{-0.004, -0.003, 1.002}, 3);
  CHECK(j.finite());
  CHECK(j.value() == doctest::Approx(-0.004 + (-0.003) * 1.002).epsilon(1e-10));
  for (const SeamMismatch& row : seam_smoothness_report(ext, 3, 5)) {
    INFO(row.seam);
    CHECK(row.mismatch <= 1e-10);
  }
}

TEST_CASE("box strip jets agree with finite differences at depth") {
  // independent check of the strip assembly: jets of the evaluator in the
  // one-sided and corner regions against Richardson central differences
  const BoxExtension ext = extend_box(named_box_source("exp2d"), 4);
  for (const Vec& p : {Vec{-0.2, 0.3}, Vec{0.4, 1.15}, Vec{-0.15, -0.1}}) {
    for (int axis = 0; axis < 2; ++axis) {
      Vec dir(2, 0.0);
      dir[static_cast<std::size_t>(axis)] = 1.0;
      for (int k = 1; k <= 2; ++k) {
        const FdReport rep = fd_crosscheck(ext.evaluator, p, dir, k, 1e-3);
        INFO("p=(", p[0], ",", p[1], ") axis=", axis, " k=", k);
        CHECK(std::abs(rep.discrepancy()) <=
              1e-6 * std::max(1.0, std::abs(rep.jet_value)));
      }
    }
    // mixed second derivative along the diagonal
    const FdReport mixed = fd_crosscheck(ext.evaluator, p, Vec{1.0, 1.0}, 2, 1e-3);
    CHECK(std::abs(mixed.discrepancy()) <= 1e-5 * std::max(1.0, std::abs(mixed.jet_value)));
  }
}
