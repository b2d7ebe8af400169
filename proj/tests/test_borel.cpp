#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cornerext/borel.hpp"

using namespace cornerext;

namespace {

Jet1 jet_at(const BorelRealization& br, double x, int order) {
  return jetn_to_jet1(br.evaluator.jet(Vec{x}, order));
}

}  // namespace

TEST_CASE("choose_scales: zero targets, determinism, monotonicity") {
  // all v_k = 0 for k >= 1: every c_k = 2
  TargetJet z = TargetJet::scalar({5.0, 0.0, 0.0, 0.0, 0.0});
  const ScaleCertificate cz = choose_scales(z);
  for (int k = 1; k <= 4; ++k) CHECK(cz.scales[static_cast<std::size_t>(k)] == 2.0);
  CHECK(certificate_valid(cz));

  // sin target: certificate holds by direct substitution
  TargetJet s = TargetJet::scalar({0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0});
  const ScaleCertificate cs = choose_scales(s);
  CHECK(certificate_valid(cs));
  for (int k = 1; k <= 6; ++k) {
    const double c = cs.scales[static_cast<std::size_t>(k)];
    CHECK(c >= 2.0);
    // powers of two
    CHECK(std::abs(std::log2(c) - std::round(std::log2(c))) < 1e-12);
  }

  // doubling the target never decreases any scale
  TargetJet s2 = s;
  for (auto& vk : s2.values)
    for (double& v : vk) v *= 2.0;
  const ScaleCertificate cs2 = choose_scales(s2);
  for (std::size_t k = 1; k < cs.scales.size(); ++k) CHECK(cs2.scales[k] >= cs.scales[k]);
}

TEST_CASE("realize: constants, slope, sin reproduction") {
  // constant target realizes to the constant
  const BorelRealization c5 = realize(TargetJet::scalar({5.0, 0.0, 0.0}));
  for (double x : {-3.0, -1.0, 0.0, 0.7, 10.0}) CHECK(jet_at(c5, x, 0).value() == 5.0);

  // slope target: evaluator(x) = c1^-1 xi(c1 x) equals x near 0
  const BorelRealization sl = realize(TargetJet::scalar({0.0, 1.0, 0.0, 0.0}));
  const double c1 = sl.certificate.scales[1];
  const double xs = 1.0 / (4.0 * c1);
  CHECK(jet_at(sl, xs, 0).value() == doctest::Approx(xs).epsilon(1e-15));
  CHECK(jet_at(sl, -xs, 0).value() == doctest::Approx(-xs).epsilon(1e-15));

  // sin jet at 0, N=8: raw derivatives reproduced within 1e-9
  const BorelRealization s =
      realize(TargetJet::scalar({0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0}));
  const Jet1 at0 = jet_at(s, 0.0, 8);
  const double expect[9] = {0, 1, 0, -1, 0, 1, 0, -1, 0};
  for (int k = 0; k <= 8; ++k) CHECK(std::abs(at0.deriv(k) - expect[k]) < 1e-9);
}

TEST_CASE("jet reproduction on 100 random targets") {
  std::mt19937_64 eng(42);
  auto rnd = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53 * 20.0 - 10.0; };
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(9);
    for (double& vi : v) vi = rnd();
    const BorelRealization br = realize(TargetJet::scalar(v));
    CHECK(certificate_valid(br.certificate));
    const Jet1 at0 = jet_at(br, 0.0, 8);
    for (int k = 0; k <= 8; ++k) CHECK(std::abs(at0.deriv(k) - v[static_cast<std::size_t>(k)]) < 1e-8);
  }
}

TEST_CASE("locality: evaluator equals v0 outside the support") {
  const BorelRealization br =
      realize(TargetJet::scalar({3.0, 1.5, -2.0, 0.5, 4.0}));
  for (double x : {2.0, -2.0, 5.0}) {
    const Jet1 j = jet_at(br, x, 4);
    CHECK(j.value() == 3.0);
    for (int k = 1; k <= 4; ++k) CHECK(j.deriv(k) == 0.0);
  }
}

TEST_CASE("linearity with shared certificates") {
  std::vector<double> va{1.0, -2.0, 3.0, 0.5, -1.0};
  std::vector<double> vb{0.5, 1.0, -1.5, 2.0, 0.25};
  const double a = 2.5;
  // shared bound: componentwise max of |a v + w| and |w| and |v|
  std::vector<double> bound(va.size());
  for (std::size_t k = 0; k < va.size(); ++k)
    bound[k] = std::max({std::abs(va[k]), std::abs(vb[k]), std::abs(a * va[k] + vb[k])});
  const ScaleCertificate cert = choose_scales_from_norms(bound);

  std::vector<double> vsum(va.size());
  for (std::size_t k = 0; k < va.size(); ++k) vsum[k] = a * va[k] + vb[k];
  const BorelRealization ra = realize_with_certificate(TargetJet::scalar(va), cert);
  const BorelRealization rb = realize_with_certificate(TargetJet::scalar(vb), cert);
  const BorelRealization rs = realize_with_certificate(TargetJet::scalar(vsum), cert);
  for (double x : {-0.9, -0.3, 0.0, 0.2, 0.55, 1.4}) {
    const double lhs = jet_at(rs, x, 0).value();
    const double rhs = a * jet_at(ra, x, 0).value() + jet_at(rb, x, 0).value();
    CHECK(std::abs(lhs - rhs) <= 4.0 * 2.22e-16 * (std::abs(lhs) + 1.0));
  }
}

TEST_CASE("tail bounds") {
  const BorelRealization br =
      realize(TargetJet::scalar({0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0, -1.0, 0.0}));
  const int N = 8;
  CHECK(tail_bound_report(br, 0, N) == 0.0);
  CHECK(tail_bound_report(br, 0, N - 2) ==
        doctest::Approx(std::pow(2.0, -(N - 1)) + std::pow(2.0, -N)));

  // sampled partial-sum deviation never exceeds the certified bound:
  // drop terms k > m by realizing the truncated target with the same scales
  for (int m = 2; m <= N; ++m) {
    std::vector<double> trunc(static_cast<std::size_t>(N) + 1, 0.0);
    for (int k = 0; k <= m; ++k) trunc[static_cast<std::size_t>(k)] = br.target.values[static_cast<std::size_t>(k)][0];
    const BorelRealization part = realize_with_certificate(TargetJet::scalar(trunc), br.certificate);
    for (int l = 1; l <= std::min(4, m); ++l) {
      const double bound = tail_bound_report(br, l, m);
      double worst = 0.0;
      for (int i = 0; i <= 200; ++i) {
        const double x = -2.0 + 4.0 * i / 200.0;
        const Jet1 full = jet_at(br, x, l - 1);
        const Jet1 star = jet_at(part, x, l - 1);
        for (int n = 0; n < l; ++n) worst = std::max(worst, std::abs(full.deriv(n) - star.deriv(n)));
      }
      CHECK(worst <= bound + 1e-12);
    }
  }
}

TEST_CASE("estimate_sup_bounds dominates plateau values") {
  // on the plateau (xi^k)^{(k-1)} = k! x, so M_{k-1,k} >= k!/2
  for (int k = 2; k <= 6; ++k) {
    const std::vector<double> col = estimate_sup_bounds(k, k - 1);
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    CHECK(col[static_cast<std::size_t>(k - 1)] >= fact / 2.0);
  }
}
