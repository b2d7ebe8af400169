#pragma once

#include <optional>
#include <string>

#include "cornerext/manifold.hpp"

namespace cornerext {

/// Parsed atlas description file: a corner manifold plus an optional
/// subdomain box for the extension driver. See README for the schema
/// (chart families: affine, polar, mobius, shear).
struct AtlasFile {
  CornerManifold manifold;
  std::optional<Box> subdomain;
};

AtlasFile load_atlas(const std::string& path);   // throws std::runtime_error on parse errors
AtlasFile parse_atlas(const std::string& text);  // same, from memory

// Built-in chart families (also used directly by tests).
CornerChart make_affine_chart(const std::string& name, const std::vector<Vec>& linear,
                              const Vec& offset, CornerCone cone, Domain dom);

/// Quarter-disc polar chart: (x,y) -> (2 atan2(y,x)/pi, 1 - r) on the sector
/// r in (r_min, 1), theta < angle_max. Image lies in the positive orthant.
CornerChart make_polar_chart(const std::string& name, double r_min, double angle_max,
                             CornerCone cone);

/// Per-axis Moebius-free rational chart x_i -> x_i / (1 - a_i x_i), poles
/// outside the chart domain.
CornerChart make_mobius_chart(const std::string& name, const Vec& a, CornerCone cone, Domain dom);

/// Shear chart (x,y) -> (x (a - y), y): a rational chart whose Jacobian
/// degenerates on the line y = a; bundled as a negative control.
CornerChart make_shear_chart(const std::string& name, double a, CornerCone cone, Domain dom);

}  // namespace cornerext
