#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cornerext/matjet.hpp"
#include "cornerext/oracle.hpp"

namespace cornerext {

enum class GroupKind { kSpecialOrthogonal, kSpecialLinear, kTorus };

/// Grid-of-jets representation of a smooth map [0,1] -> K for a matrix
/// group K: per grid point the matrix value together with the order-N jet
/// of the map in the curve parameter. Immutable after construction.
struct GroupMapElement {
  GroupKind kind = GroupKind::kSpecialOrthogonal;
  int r = 3;
  std::vector<double> grid;
  std::vector<MatJet> jets;

  int points() const { return static_cast<int>(grid.size()); }
  int order() const { return jets.empty() ? 0 : jets[0].order(); }
};

/// Uniform grid on [0,1] with n points.
std::vector<double> uniform_grid(int n);

GroupMapElement identity_map(GroupKind kind, int r, const std::vector<double>& grid, int order);

/// Seeded random group-valued map: exp of a quadratic algebra-valued
/// polynomial in t (skew-symmetric for SO, traceless for SL, a rotation
/// generator for the torus).
GroupMapElement random_group_map(GroupKind kind, int r, int grid_points, int order,
                                 std::uint64_t seed);

GroupMapElement pointwise_mul(const GroupMapElement& a, const GroupMapElement& b);
GroupMapElement pointwise_inv(const GroupMapElement& a);

/// Grid-max of the per-point group-membership residual
/// (||Q^T Q - I||_F for SO/torus, |det - 1| for SL).
double membership_residual(const GroupMapElement& a);

/// Grid-max distance of all jet coefficients (value and derivatives).
double grid_max_distance(const GroupMapElement& a, const GroupMapElement& b);

/// The principal matrix-logarithm chart on W = { k : ||k - I||_F < 1 }
/// with phi(e) = 0; phi = log, phi^-1 = exp, with exp(log(k)) == k on W.
struct GroupChart {
  double radius = 1.0;

  bool contains(const Mat& k) const;
  MatJet to_algebra(const MatJet& k) const;    // phi
  MatJet from_algebra(const MatJet& x) const;  // phi^-1
};

/// Grid of jets with values in the Lie algebra (the chart codomain).
struct AlgebraMapElement {
  int r = 3;
  std::vector<double> grid;
  std::vector<MatJet> jets;
};

/// phi_* : gamma -> log o gamma for the principal log chart on
/// W = { ||k - I||_F < 1 }; throws std::domain_error when a grid value
/// leaves W.
AlgebraMapElement chart_transport(const GroupMapElement& a);
GroupMapElement inverse_chart_transport(const AlgebraMapElement& x, GroupKind kind);
double algebra_grid_max_distance(const AlgebraMapElement& a, const AlgebraMapElement& b);

/// A parameter-dependent map f : M x U -> R^s with M = [0,1] and U an open
/// box in R^e, presented as a JetOracle on R^{1+e}.
struct ParamMap {
  JetOracle f;   // dim = 1 + u_dim
  int u_dim = 1;
  Box u_box;     // admissible values of the U slot
};

/// gamma : M -> R^e on a grid, with jets in the curve parameter.
struct GridMap {
  std::vector<double> grid;
  std::vector<std::vector<Jet1>> comps;  // per point: e jets

  int points() const { return static_cast<int>(grid.size()); }
  int dim() const { return comps.empty() ? 0 : static_cast<int>(comps[0].size()); }
};

GridMap make_grid_map(const std::vector<double>& grid, int order,
                      const std::vector<std::function<Jet1(double, int)>>& components);

/// f_sharp gamma = f o (id, gamma), with full jet propagation.
GridMap pushforward(const ParamMap& f, const GridMap& gamma);

struct DpfReport {
  double epsilon = 0.0;       // detected admissible direction scale
  double max_residual = 0.0;  // grid-max |Richardson FD - (d^n_2 f)_sharp|
};

/// Compares the finite-difference directional derivative of f_sharp along
/// eta (steps 1e-2, 1e-3, Richardson extrapolated) with the partial-jet
/// push-forward (d^n_2 f)_sharp(gamma, eta), n in {1,2}.
DpfReport verify_dpf(const ParamMap& f, const GridMap& gamma, const GridMap& eta, int n);

/// Named parameter-dependent maps used by the dpf battery:
/// "m_u2" (m u^2), "u3" (u^3), "sin_u" (sin u + m), "m_exp_u" (m e^u),
/// "linear" (u), "m_plus_u2" (m + u^2). All with U = (-4,4).
ParamMap named_param_map(const std::string& name);

/// Named paired-real complex maps for the holomorphy battery:
/// holomorphic "z2", "expz", "matmul2" (product on a GL(2,C) x GL(2,C)
/// slice); antiholomorphic controls "conj", "rez".
JetOracle named_holomorphy_case(const std::string& name);

struct HolomorphyReport {
  double max_residual = 0.0;
  bool pass = false;  // residual <= 1e-8
};

/// Complex-linearity of the differential for a map between complex vector
/// spaces encoded as paired reals: samples ||df(x)(iv) - i df(x)(v)||_max.
HolomorphyReport holomorphy_check(const JetOracle& f_paired, int samples, std::uint64_t seed);

struct GroupAxiomReport {
  int samples = 0;
  int violations = 0;
  double worst_product_norm = 0.0;  // largest ||gh - I||_F over tested pairs
  bool jets_finite = true;
  bool pass() const { return violations == 0 && jets_finite; }
};

/// Sampled closure/smoothness checks for the local description of the group:
/// products of V-ball elements land in the chart ball U, inversion closes on
/// V, conjugates of W-ball elements land in U, and the multiplication,
/// inversion and conjugation curves have finite jets to the given order.
GroupAxiomReport verify_local_group_axioms(GroupKind kind, int r, double v_radius,
                                           double w_radius, int samples, std::uint64_t seed,
                                           int order);

}  // namespace cornerext
