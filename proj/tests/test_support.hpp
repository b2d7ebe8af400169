#pragma once

// Shared fixture manifolds for tests and the acceptance suite.

#include "cornerext/atlas.hpp"
#include "cornerext/manifold.hpp"

namespace cornerext::testsupport {

/// R^2 as a single-chart manifold with corner co-dimension 0 and a finite
/// chart window (needed by sampling-based checks).
inline CornerManifold plane_manifold(double lo = -2.0, double hi = 3.0) {
  CornerManifold M;
  M.ambient_dim = 2;
  M.dim = 2;
  M.codim = 0;
  M.charts.push_back(make_affine_chart("main", {Vec{1.0, 0.0}, Vec{0.0, 1.0}}, Vec{0.0, 0.0},
                                       CornerCone::orthant(2, 0),
                                       box_domain(Vec{lo, lo}, Vec{hi, hi})));
  return M;
}

/// The positive quadrant window as a corner manifold of co-dimension 2.
inline CornerManifold quadrant_manifold() {
  CornerManifold M;
  M.ambient_dim = 2;
  M.dim = 2;
  M.codim = 2;
  M.charts.push_back(make_affine_chart("id", {Vec{1.0, 0.0}, Vec{0.0, 1.0}}, Vec{0.0, 0.0},
                                       CornerCone::orthant(2, 2),
                                       box_domain(Vec{0.0, 0.0}, Vec{1.0, 1.0})));
  return M;
}

/// Quarter disc (minus the origin) with a Cartesian and a polar-type chart.
inline CornerManifold quarter_disc_manifold() {
  CornerManifold M;
  M.ambient_dim = 2;
  M.dim = 2;
  M.codim = 2;
  Domain cart;
  cart.bounds = Box{Vec{0.0, 0.0}, Vec{1.0, 1.0}};
  cart.member = [](const Vec& p) {
    if (p[0] < 0.0 || p[1] < 0.0) return false;
    const double r2 = p[0] * p[0] + p[1] * p[1];
    return r2 > 1e-8 && r2 < 1.0;
  };
  M.charts.push_back(make_affine_chart("cart", {Vec{1.0, 0.0}, Vec{0.0, 1.0}}, Vec{0.0, 0.0},
                                       CornerCone::orthant(2, 2), cart));
  M.charts.push_back(make_polar_chart("polar", 0.05, 3.0 * M_PI / 8.0,
                                      CornerCone::orthant(2, 2)));
  return M;
}

/// Same manifold with the polar chart replaced by a shear whose image puts
/// interior points on a cone face (negative control).
inline CornerManifold broken_quarter_disc_manifold() {
  CornerManifold M = quarter_disc_manifold();
  Domain dom;
  dom.bounds = Box{Vec{0.05, 0.05}, Vec{0.9, 0.9}};
  dom.member = [](const Vec& p) {
    return p[0] > 0.05 && p[0] < 0.9 && p[1] > 0.05 && p[1] < 0.9 &&
           p[0] * p[0] + p[1] * p[1] < 1.0;
  };
  M.charts[1] = make_shear_chart("broken", 0.6, CornerCone::orthant(2, 2), dom);
  return M;
}

/// [0,1] as a 1-D manifold with corners: two charts, one per end.
inline CornerManifold interval_manifold() {
  CornerManifold M;
  M.ambient_dim = 1;
  M.dim = 1;
  M.codim = 1;
  M.charts.push_back(make_affine_chart("left", {Vec{1.0}}, Vec{0.0},
                                       CornerCone::orthant(1, 1),
                                       box_domain(Vec{0.0}, Vec{0.8})));
  M.charts.push_back(make_affine_chart("right", {Vec{-1.0}}, Vec{1.0},
                                       CornerCone::orthant(1, 1),
                                       box_domain(Vec{0.2}, Vec{1.0})));
  return M;
}

}  // namespace cornerext::testsupport
