#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cornerext/extend.hpp"
#include "cornerext/oracle.hpp"

namespace cornerext {

/// The corner cone E+ = intersection of half spaces lambda_k >= 0 for
/// linear functionals lambda_k on the model space R^d.
struct CornerCone {
  int dim = 0;
  std::vector<Vec> functionals;  // one row per lambda_k; may be empty (codim 0)

  double apply(int k, const Vec& u) const;
  bool member(const Vec& u, double tol = 1e-12) const;
  bool interior(const Vec& u, double tol = 1e-12) const;
  std::vector<int> active_set(const Vec& u, double tol = 1e-10) const;

  /// First `codim` coordinate functionals.
  static CornerCone orthant(int dim, int codim);
};

/// A chart into the corner cone: forward/inverse maps supplied as jet
/// oracles in ambient coordinates, with a membership predicate for the
/// chart domain.
struct CornerChart {
  std::string name;
  Domain domain;      // ambient points covered by this chart
  JetOracle forward;  // ambient -> cone coordinates
  JetOracle inverse;  // cone coordinates -> ambient
  CornerCone cone;
};

struct CornerManifold {
  int ambient_dim = 0;
  int dim = 0;
  int codim = 0;
  std::vector<CornerChart> charts;

  int find_chart(const Vec& p) const;  // first covering chart, or -1
};

struct Classification {
  bool interior = false;
  int chart = -1;
  std::vector<int> active;  // indices of vanishing functionals
};

/// Interior/boundary classification through the first covering chart;
/// throws std::domain_error when no chart covers the point.
Classification classify_point(const CornerManifold& M, const Vec& p, double tol = 1e-10);

struct InvarianceReport {
  int samples = 0;      // attempted interior samples on chart overlaps
  int checked = 0;      // samples that landed in an overlap
  int violations = 0;   // interior points that failed in the other chart
  double min_abs_det = 0.0;  // smallest |det| of a coordinate-change Jacobian
};

/// Lemma-style decidable check: sampled interior points of one chart image
/// stay interior in every other covering chart, with invertible coordinate
/// change Jacobians. Failures are reported, not thrown.
InvarianceReport check_interior_invariance(const CornerManifold& M, int samples,
                                           std::uint64_t seed);

/// A smooth map between corner manifolds, given in ambient coordinates.
struct ManifoldMap {
  const CornerManifold* src = nullptr;
  const CornerManifold* dst = nullptr;
  JetOracle map;  // ambient(src) -> ambient(dst)
};

/// A point of T^n M in chart coordinates: 2^n component vectors, the first
/// being the chart image of the base point (mirrors T^n E = E^{2^n}).
struct HigherTangentPoint {
  int chart = 0;
  std::vector<Vec> comps;

  int level() const;
};

/// Chart-wise n-th tangent prolongation: evaluates T^n f on a higher
/// tangent point via the n-fold tangent lift of the coordinate
/// representation. Throws std::invalid_argument when f maps the base point
/// out of the interior-preservation contract.
HigherTangentPoint tangent_map(const ManifoldMap& f, const HigherTangentPoint& x, int level);

/// The equivalence (x,i) ~ (d(phi_j o phi_i^-1)(phi_i(m)).x, j) realized:
/// re-expresses a level-1 tangent point in another chart covering the same
/// base point.
HigherTangentPoint change_tangent_chart(const CornerManifold& M, const HigherTangentPoint& x,
                                        int target_chart);

/// A smooth partition of unity subordinated to a finite box cover:
/// per cover box a tensor cutoff bump, normalized by the sum.
struct PartitionOfUnity {
  std::vector<Box> cover;
  std::vector<JetOracle> bumps;  // normalized; supp(bumps[i]) inside cover[i]

  /// Values (and jets) of all members at a point.
  std::vector<JetN> member_jets(const Vec& p, int order) const;
};

/// Builds the partition; throws std::domain_error if the sampled manifold
/// points are not covered (sum of raw bumps vanishes somewhere).
PartitionOfUnity partition_of_unity(const CornerManifold& M, const std::vector<Box>& cover,
                                    int validation_samples = 1000, std::uint64_t seed = 42);

/// Same, but coverage is validated on the given region instead of the whole
/// manifold (used when the cover is subordinate to an open subset).
PartitionOfUnity partition_of_unity_on(const CornerManifold& M, const Domain& region,
                                       const std::vector<Box>& cover, int validation_samples,
                                       std::uint64_t seed);

/// Smooth bump supported on a box: product of scaled cutoffs per axis,
/// identically 1 on the middle half, positive exactly on the open box.
JetOracle box_bump_oracle(const Box& b);

// Extension from a corner subdomain ---------------------------------------

/// Axis-aligned affine chart p -> S (p - shift), S a diagonal sign matrix;
/// used by the boundary patches.
struct PatchChart {
  Vec signs;   // +1 / -1 per axis
  Vec shift;

  Vec apply(const Vec& p) const;
  Vec apply_inverse(const Vec& u) const;
};

struct BoundaryPatch {
  std::string name;
  Vec point;              // the boundary point m
  PatchChart phi;         // phi(L cap L_m) lies in the positive orthant
  Box cube;               // C_m in chart coordinates
  Box vbox;               // fattened neighbourhood: cube extended by eps/2
                          // below each zero face (the V_m the patch trusts)
  std::vector<int> zero_faces;
  double eps = 0.0;
};

/// A corner subdomain of the manifold, desk scale: an axis-aligned box with
/// explicit boundary patches (one per face midpoint and per corner).
struct CornerSubdomain {
  Box box;
  std::vector<BoundaryPatch> patches;
};

/// Deterministic patch construction: eps is the largest power of two such
/// that every cube fits inside the box.
CornerSubdomain make_box_subdomain(const Box& L);

struct ManifoldExtension {
  CornerSubdomain subdomain;
  Domain extended_domain;  // advertised open superset U
  PartitionOfUnity partition;
  std::vector<BoxExtension> patch_extensions;
  JetOracle evaluator;  // f-bar on U, equal to f on L
};

/// Partition-of-unity extension operator: per boundary patch the source is
/// rescaled to the unit box, extended by extend_box and pulled back; the
/// pieces are glued with bumps subordinated to {int L, V_m, outside strips}.
/// Throws std::runtime_error naming the patch when a cube does not fit.
ManifoldExtension extend_on_manifold(const CornerManifold& M, const CornerSubdomain& L,
                                     const JetOracle& f, int order, ExtendOptions opts = {});

struct ManifoldSeamRow {
  std::string location;
  int k = 1;
  double error = 0.0;
};

/// Central finite differences of the extension across the subdomain
/// boundary (step h) against the jet-predicted directional derivatives.
std::vector<ManifoldSeamRow> manifold_seam_fd(const ManifoldExtension& ext, int samples_per_face,
                                              double h, std::uint64_t seed);

}  // namespace cornerext
