#include "cornerext/atlas.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cornerext/matjet.hpp"

namespace cornerext {

CornerChart make_affine_chart(const std::string& name, const std::vector<Vec>& linear,
                              const Vec& offset, CornerCone cone, Domain dom) {
  CornerChart ch;
  ch.name = name;
  ch.domain = dom;
  ch.cone = std::move(cone);
  const int d = static_cast<int>(offset.size());
  const std::vector<Vec> A = linear;
  const Vec b = offset;

  JetOracle fwd;
  fwd.dim = d;
  fwd.codim = d;
  fwd.domain = dom;
  fwd.eval = [A, b, d](const Vec& p, int m) {
    std::vector<JetN> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
      JetN acc = jetn_constant(p, b[static_cast<std::size_t>(r)], m);
      for (int c = 0; c < d; ++c)
        if (A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0.0)
          acc = jetn_add(acc, jetn_scale(jetn_coordinate(p, c, m),
                                         A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]));
      out.push_back(std::move(acc));
    }
    return out;
  };
  ch.forward = fwd;

  // inverse: solve A x = u - b (A given small; invert once)
  Mat Am(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      Am.at(r, c) = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  const Mat Ai = mat_inverse(Am);
  JetOracle inv;
  inv.dim = d;
  inv.codim = d;
  inv.domain = all_space(d);
  inv.eval = [Ai, b, d](const Vec& u, int m) {
    std::vector<JetN> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
      JetN acc = jetn_constant(u, 0.0, m);
      for (int c = 0; c < d; ++c)
        if (Ai.at(r, c) != 0.0) {
          JetN uc = jetn_shift(jetn_coordinate(u, c, m), -b[static_cast<std::size_t>(c)]);
          acc = jetn_add(acc, jetn_scale(uc, Ai.at(r, c)));
        }
      out.push_back(std::move(acc));
    }
    return out;
  };
  ch.inverse = inv;
  return ch;
}

CornerChart make_polar_chart(const std::string& name, double r_min, double angle_max,
                             CornerCone cone) {
  CornerChart ch;
  ch.name = name;
  ch.cone = std::move(cone);

  Domain dom;
  dom.bounds = Box{Vec{0.0, 0.0}, Vec{1.0, 1.0}};
  dom.member = [r_min, angle_max](const Vec& p) {
    const double x = p[0], y = p[1];
    if (x < 0.0 || y < 0.0) return false;
    const double r = std::sqrt(x * x + y * y);
    if (r <= r_min || r >= 1.0) return false;
    return std::atan2(y, x) < angle_max;
  };
  dom.closed = true;
  ch.domain = dom;

  JetOracle fwd;
  fwd.dim = 2;
  fwd.codim = 2;
  fwd.domain = dom;
  fwd.eval = [](const Vec& p, int m) {
    const JetN x = jetn_coordinate(p, 0, m);
    const JetN y = jetn_coordinate(p, 1, m);
    const JetN r2 = jetn_add(jetn_mul(x, x), jetn_mul(y, y));
    const JetN r = jetn_apply(sqrt_jet(r2.value(), m), r2);
    // theta = atan(y/x); the chart domain keeps x > 0
    const JetN q = jetn_mul(y, jetn_recip(x));
    const JetN theta = jetn_apply(atan_jet(q.value(), m), q);
    std::vector<JetN> out;
    out.push_back(jetn_scale(theta, 2.0 / M_PI));        // u1 = 2 theta / pi
    out.push_back(jetn_shift(jetn_scale(r, -1.0), 1.0)); // u2 = 1 - r
    return out;
  };
  ch.forward = fwd;

  JetOracle inv;
  inv.dim = 2;
  inv.codim = 2;
  inv.domain = all_space(2);
  inv.eval = [](const Vec& u, int m) {
    const JetN th = jetn_scale(jetn_coordinate(u, 0, m), M_PI / 2.0);
    const JetN r = jetn_shift(jetn_scale(jetn_coordinate(u, 1, m), -1.0), 1.0);
    const JetN c = jetn_apply(elementary_jet(Elementary::kCos, th.value(), m), th);
    const JetN s = jetn_apply(elementary_jet(Elementary::kSin, th.value(), m), th);
    std::vector<JetN> out;
    out.push_back(jetn_mul(r, c));
    out.push_back(jetn_mul(r, s));
    return out;
  };
  ch.inverse = inv;
  return ch;
}

CornerChart make_mobius_chart(const std::string& name, const Vec& a, CornerCone cone, Domain dom) {
  CornerChart ch;
  ch.name = name;
  ch.domain = dom;
  ch.cone = std::move(cone);
  const int d = static_cast<int>(a.size());
  const Vec av = a;

  JetOracle fwd;
  fwd.dim = d;
  fwd.codim = d;
  fwd.domain = dom;
  fwd.eval = [av, d](const Vec& p, int m) {
    std::vector<JetN> out;
    for (int i = 0; i < d; ++i) {
      const JetN x = jetn_coordinate(p, i, m);
      const JetN den = jetn_shift(jetn_scale(x, -av[static_cast<std::size_t>(i)]), 1.0);
      out.push_back(jetn_mul(x, jetn_recip(den)));
    }
    return out;
  };
  ch.forward = fwd;

  JetOracle inv;
  inv.dim = d;
  inv.codim = d;
  inv.domain = all_space(d);
  inv.eval = [av, d](const Vec& u, int m) {
    std::vector<JetN> out;
    for (int i = 0; i < d; ++i) {
      const JetN x = jetn_coordinate(u, i, m);
      const JetN den = jetn_shift(jetn_scale(x, av[static_cast<std::size_t>(i)]), 1.0);
      out.push_back(jetn_mul(x, jetn_recip(den)));
    }
    return out;
  };
  ch.inverse = inv;
  return ch;
}

CornerChart make_shear_chart(const std::string& name, double a, CornerCone cone, Domain dom) {
  CornerChart ch;
  ch.name = name;
  ch.domain = dom;
  ch.cone = std::move(cone);

  JetOracle fwd;
  fwd.dim = 2;
  fwd.codim = 2;
  fwd.domain = dom;
  fwd.eval = [a](const Vec& p, int m) {
    const JetN x = jetn_coordinate(p, 0, m);
    const JetN y = jetn_coordinate(p, 1, m);
    const JetN fac = jetn_shift(jetn_scale(y, -1.0), a);  // a - y
    std::vector<JetN> out;
    out.push_back(jetn_mul(x, fac));
    out.push_back(y);
    return out;
  };
  ch.forward = fwd;

  JetOracle inv;
  inv.dim = 2;
  inv.codim = 2;
  inv.domain = all_space(2);
  inv.eval = [a](const Vec& u, int m) {
    const JetN u1 = jetn_coordinate(u, 0, m);
    const JetN u2 = jetn_coordinate(u, 1, m);
    const JetN fac = jetn_shift(jetn_scale(u2, -1.0), a);  // a - u2
    std::vector<JetN> out;
    out.push_back(jetn_mul(u1, jetn_recip(fac)));
    out.push_back(u2);
    return out;
  };
  ch.inverse = inv;
  return ch;
}

namespace {

Domain parse_domain(std::istringstream& in) {
  std::string kind;
  if (!(in >> kind)) throw std::runtime_error("atlas: missing domain spec");
  if (kind == "box") {
    double x0, y0, x1, y1;
    if (!(in >> x0 >> y0 >> x1 >> y1)) throw std::runtime_error("atlas: bad box domain");
    return box_domain(Vec{x0, y0}, Vec{x1, y1});
  }
  if (kind == "quarterdisc") {
    double rmin, rmax;
    if (!(in >> rmin >> rmax)) throw std::runtime_error("atlas: bad quarterdisc domain");
    Domain d;
    d.bounds = Box{Vec{0.0, 0.0}, Vec{rmax, rmax}};
    d.member = [rmin, rmax](const Vec& p) {
      if (p[0] < 0.0 || p[1] < 0.0) return false;
      const double r = std::sqrt(p[0] * p[0] + p[1] * p[1]);
      return r > rmin && r < rmax;
    };
    return d;
  }
  if (kind == "plane") {
    return all_space(2);
  }
  throw std::runtime_error("atlas: unknown domain kind " + kind);
}

}  // namespace

AtlasFile parse_atlas(const std::string& text) {
  AtlasFile out;
  out.manifold.ambient_dim = 2;
  out.manifold.dim = 2;
  out.manifold.codim = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream in(line);
    std::string key;
    if (!(in >> key)) continue;
    if (key == "ambient") {
      in >> out.manifold.ambient_dim;
    } else if (key == "dim") {
      in >> out.manifold.dim;
    } else if (key == "codim") {
      in >> out.manifold.codim;
    } else if (key == "subdomain") {
      std::string kind;
      double x0, y0, x1, y1;
      if (!(in >> kind >> x0 >> y0 >> x1 >> y1) || kind != "box")
        throw std::runtime_error("atlas: bad subdomain line");
      out.subdomain = Box{Vec{x0, y0}, Vec{x1, y1}};
    } else if (key == "chart") {
      std::string name, family;
      if (!(in >> name >> family)) throw std::runtime_error("atlas: bad chart line");
      const CornerCone cone = CornerCone::orthant(out.manifold.dim, out.manifold.codim);
      if (family == "affine") {
        double a11, a12, a21, a22, b1, b2;
        if (!(in >> a11 >> a12 >> a21 >> a22 >> b1 >> b2))
          throw std::runtime_error("atlas: bad affine chart");
        std::string kw;
        if (!(in >> kw) || kw != "domain") throw std::runtime_error("atlas: chart needs domain");
        Domain dom = parse_domain(in);
        out.manifold.charts.push_back(
            make_affine_chart(name, {Vec{a11, a12}, Vec{a21, a22}}, Vec{b1, b2}, cone, dom));
      } else if (family == "polar") {
        double rmin, amax;
        if (!(in >> rmin >> amax)) throw std::runtime_error("atlas: bad polar chart");
        out.manifold.charts.push_back(make_polar_chart(name, rmin, amax, cone));
      } else if (family == "mobius") {
        double a1, a2;
        if (!(in >> a1 >> a2)) throw std::runtime_error("atlas: bad mobius chart");
        std::string kw;
        if (!(in >> kw) || kw != "domain") throw std::runtime_error("atlas: chart needs domain");
        Domain dom = parse_domain(in);
        out.manifold.charts.push_back(make_mobius_chart(name, Vec{a1, a2}, cone, dom));
      } else if (family == "shear") {
        double a;
        if (!(in >> a)) throw std::runtime_error("atlas: bad shear chart");
        std::string kw;
        if (!(in >> kw) || kw != "domain") throw std::runtime_error("atlas: chart needs domain");
        Domain dom = parse_domain(in);
        out.manifold.charts.push_back(make_shear_chart(name, a, cone, dom));
      } else {
        throw std::runtime_error("atlas: unknown chart family " + family);
      }
    } else {
      throw std::runtime_error("atlas: unknown keyword " + key);
    }
  }
  if (out.manifold.charts.empty()) throw std::runtime_error("atlas: no charts");
  return out;
}

AtlasFile load_atlas(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open atlas file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_atlas(ss.str());
}

}  // namespace cornerext
