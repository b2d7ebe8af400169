#include "cornerext/borel.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace cornerext {

double TargetJet::sup_norm(int k) const {
  double m = 0.0;
  for (double v : values[static_cast<std::size_t>(k)]) m = std::max(m, std::abs(v));
  return m;
}

TargetJet TargetJet::from_oracle(const JetOracle& f, double point, int order) {
  if (f.dim != 1) throw std::invalid_argument("TargetJet::from_oracle needs a 1-D oracle");
  const std::vector<JetN> jets = f.jets(Vec{point}, order);
  TargetJet t;
  t.values.assign(static_cast<std::size_t>(order) + 1, Vec(jets.size(), 0.0));
  for (std::size_t i = 0; i < jets.size(); ++i) {
    const Jet1 j = jetn_to_jet1(jets[i]);
    for (int k = 0; k <= order; ++k) t.values[static_cast<std::size_t>(k)][i] = j.deriv(k);
  }
  return t;
}

TargetJet TargetJet::scalar(std::vector<double> derivs) {
  TargetJet t;
  t.values.reserve(derivs.size());
  for (double v : derivs) t.values.push_back(Vec{v});
  return t;
}

std::vector<double> estimate_sup_bounds(int k, int max_n) {
  if (k < 1) throw std::invalid_argument("estimate_sup_bounds needs k >= 1");
  const auto& table = bump_bound_table(std::max(k, max_n));
  std::vector<double> col(static_cast<std::size_t>(max_n) + 1, 0.0);
  for (int n = 0; n <= max_n; ++n) col[static_cast<std::size_t>(n)] = table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  return col;
}

const std::vector<std::vector<double>>& bump_bound_table(int max_order) {
  static std::mutex mu;
  static int cached_order = -1;
  static std::vector<std::vector<double>> table;
  std::lock_guard<std::mutex> lock(mu);
  if (max_order <= cached_order) return table;

  const int K = max_order;
  table.assign(static_cast<std::size_t>(K) + 1,
               std::vector<double>(static_cast<std::size_t>(K) + 1, 0.0));
  const int samples = 10000;
  for (int i = 0; i <= samples; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / samples;
    const Jet1 xi = xi_jet(x, K);
    Jet1 pw = jet_constant(x, 1.0, K);
    for (int k = 1; k <= K; ++k) {
      pw = jet_mul(pw, xi);
      double fact = 1.0;
      for (int n = 0; n <= K; ++n) {
        const double raw = std::abs(pw.coeff(n)) * fact;
        auto& cell = table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
        if (raw > cell) cell = raw;
        fact *= static_cast<double>(n + 1);
      }
    }
  }
  for (auto& row : table)
    for (double& v : row) v *= 1.1;
  cached_order = K;
  return table;
}

ScaleCertificate choose_scales_from_norms(const std::vector<double>& vk_norms) {
  const int N = static_cast<int>(vk_norms.size()) - 1;
  const auto& table = bump_bound_table(std::max(1, N));
  ScaleCertificate cert;
  cert.target_norms = vk_norms;
  cert.bounds = table;
  cert.scales.assign(static_cast<std::size_t>(N) + 1, 2.0);
  for (int k = 1; k <= N; ++k) {
    double c = 2.0;
    for (;;) {
      bool ok = true;
      for (int n = 0; n < k; ++n) {
        const double lhs = vk_norms[static_cast<std::size_t>(k)] * std::pow(c, n - k) *
                           table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
        if (!(lhs < std::pow(2.0, -k))) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      c *= 2.0;
      if (c > 1e90) throw std::runtime_error("scale selection diverged");
    }
    cert.scales[static_cast<std::size_t>(k)] = c;
  }
  return cert;
}

ScaleCertificate choose_scales(const TargetJet& target) {
  std::vector<double> norms(static_cast<std::size_t>(target.order()) + 1, 0.0);
  for (int k = 0; k <= target.order(); ++k) norms[static_cast<std::size_t>(k)] = target.sup_norm(k);
  return choose_scales_from_norms(norms);
}

bool certificate_valid(const ScaleCertificate& cert) {
  const int N = cert.order();
  for (int k = 1; k <= N; ++k) {
    const double c = cert.scales[static_cast<std::size_t>(k)];
    if (!(c > 1.0)) return false;
    for (int n = 0; n < k; ++n) {
      const double lhs = cert.target_norms[static_cast<std::size_t>(k)] * std::pow(c, n - k) *
                         cert.bounds[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
      if (!(lhs < std::pow(2.0, -k))) return false;
    }
  }
  return true;
}

Jet1 scaled_xi_power_jet(int k, double c, double x, int order) {
  if (k == 0) return jet_constant(x, 1.0, order);
  // u(x) = c^-1 xi(c x): Taylor coeff_j(u at x) = xi_j(c x) * c^(j-1)
  const Jet1 base = xi_jet(c * x, order);
  std::vector<double> coeffs(static_cast<std::size_t>(order) + 1, 0.0);
  double p = 1.0 / c;
  for (int j = 0; j <= order; ++j) {
    coeffs[static_cast<std::size_t>(j)] = base.coeff(j) * p;
    p *= c;
  }
  Jet1 u(x, std::move(coeffs));
  return jet_pow(u, k);
}

BorelRealization realize_with_certificate(const TargetJet& target, ScaleCertificate cert) {
  if (target.order() < 0) throw std::invalid_argument("empty target jet");
  const int N = target.order();
  const int s = target.codim();
  BorelRealization br;
  br.target = target;
  br.certificate = std::move(cert);
  const std::vector<double> scales = br.certificate.scales;
  const TargetJet tgt = target;

  JetOracle o;
  o.dim = 1;
  o.codim = s;
  o.domain = all_space(1);
  o.eval = [tgt, scales, N, s](const Vec& p, int order) {
    const double x = p[0];
    std::vector<Jet1> comp(static_cast<std::size_t>(s), Jet1(x, order));
    double fact = 1.0;  // k!
    for (int k = 0; k <= N; ++k) {
      const Jet1 u = scaled_xi_power_jet(k, scales[static_cast<std::size_t>(k)], x, order);
      for (int i = 0; i < s; ++i) {
        const double w =
            tgt.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] / fact;
        if (w != 0.0)
          comp[static_cast<std::size_t>(i)] =
              jet_add(comp[static_cast<std::size_t>(i)], jet_scale(u, w));
      }
      fact *= static_cast<double>(k + 1);
    }
    std::vector<JetN> out;
    out.reserve(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) out.push_back(jet1_to_jetn(comp[static_cast<std::size_t>(i)]));
    return out;
  };
  br.evaluator = std::move(o);
  return br;
}

BorelRealization realize(const TargetJet& target) {
  return realize_with_certificate(target, choose_scales(target));
}

double tail_bound_report(const BorelRealization& realization, int l, int m) {
  const int N = realization.target.order();
  if (m > N || l > m || l < 0) throw std::invalid_argument("tail_bound_report: need l <= m <= N");
  double s = 0.0;
  for (int k = m + 1; k <= N; ++k) s += std::pow(2.0, -k);
  return s;
}

}  // namespace cornerext
