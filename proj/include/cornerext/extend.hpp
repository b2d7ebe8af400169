#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cornerext/borel.hpp"
#include "cornerext/oracle.hpp"

namespace cornerext {

struct ExtendOptions {
  std::vector<int> axis_order;   // default: ascending
  int face_grid_1d = 129;        // certificate sampling, one off-axis variable
  int face_grid_nd = 9;          // per-variable grid when several off-axis variables
  bool memoize = false;          // opt-in exact-point cache of boundary jets
  // Fixed-certificate mode: choose all scales from these norms instead of the
  // sampled per-target sups (makes the operator linear in the source).
  std::optional<std::vector<double>> shared_target_norms;
};

/// Smooth extension from [0,1] to R: the source on [0,1] (identical code
/// path, bit-exact) glued to Borel realizations of its endpoint jets.
struct IntervalExtension {
  JetOracle source;
  int order = 0;
  bool degenerate = false;  // order 0: continuous constant-jet gluing only
  BorelRealization left;   // realizes the jet of f at 0; used for x < 0
  BorelRealization right;  // realizes the jet of f at 1, shifted; used for x > 1
  JetOracle evaluator;     // on all of R

  /// Branch-forced evaluation: region -1/0/+1 selects the left strip, the
  /// source, or the right strip regardless of where p lies. With region
  /// -1 at p = 0 this is the one-sided limit of the outside branch.
  std::vector<JetN> forced_jets(const Vec& p, int m, int region) const;
};

IntervalExtension extend_interval(const JetOracle& f, int order, ExtendOptions opts = {});

/// Per-axis construction record of a box extension.
struct AxisExtensionRecord {
  int axis = 0;
  ScaleCertificate lo;  // certificate for the face at 0
  ScaleCertificate hi;  // certificate for the face at 1
};

/// Smooth extension from [0,1]^d to R^d by per-axis iteration, in the order
/// given by the axis records. Outside the box in several axes at once the
/// value is the composition of the per-axis operators (order-dependent).
class BoxExtension {
 public:
  JetOracle source;
  int order = 0;
  bool degenerate = false;  // order 0: continuous constant-jet gluing only
  std::vector<AxisExtensionRecord> records;
  JetOracle evaluator;  // on all of R^d

  /// Branch-forced evaluation; region[axis] in {-1,0,+1}, one entry per
  /// axis (entries for unextended axes are ignored). nullptr = dispatch by
  /// the point's coordinates.
  std::vector<JetN> forced_jets(const Vec& p, int m, const std::vector<int>* region) const;

 private:
  friend BoxExtension extend_box(const JetOracle&, int, ExtendOptions);
  std::shared_ptr<const struct BoxImpl> impl_;
};

BoxExtension extend_box(const JetOracle& f, int order, ExtendOptions opts = {});

/// The currying adapter f^(x)(y) = f(x,y): for a fixed prefix x of length
/// `split`, a JetOracle in the remaining variables whose jets are the
/// partial jets of f. Values are evaluated through the identical source
/// call, hence bit-exact.
struct CurriedView {
  JetOracle source;
  int split = 0;

  JetOracle at(const Vec& x_prefix) const;
};

CurriedView curry(const JetOracle& f, int split);

// Reports ---------------------------------------------------------------

struct SeamMismatch {
  std::string seam;      // e.g. "x0=0" or "x1=1 @ (0.5)"
  double mismatch = 0.0; // max |raw partial difference| over orders <= k
};

/// One-sided jet comparison at seam points: the outside branch evaluated at
/// the seam (its continuous one-sided limit) against the inside jet.
std::vector<SeamMismatch> seam_smoothness_report(const IntervalExtension& ext, int k);
std::vector<SeamMismatch> seam_smoothness_report(const BoxExtension& ext, int k,
                                                 int face_samples = 9);

struct FdRateReport {
  int k = 1;
  std::array<double, 3> steps{1e-2, 1e-3, 1e-4};
  std::array<double, 3> errors{};
  double observed_order = 0.0;  // max consecutive-pair rate (errors floored at 1e-14)
  double max_error = 0.0;
};

/// Central finite differences of the evaluator across the seam at x = seam,
/// compared against the jet-predicted derivative there. k = 1 differences
/// values; k = 2 differences the first-derivative jet entries (keeps the
/// difference quotient above roundoff).
FdRateReport seam_fd_rate(const IntervalExtension& ext, double seam, int k);

struct StraddleRow {
  std::string location;
  double mismatch = 0.0;
  bool finite = true;
};

/// Face/corner continuity check: for sampled face points and box corners,
/// straddling point pairs at the given distance select the inside and
/// outside regions; the outside region's one-sided limit jets at the face
/// are compared with the inside jets over all |alpha| <= max_order.
std::vector<StraddleRow> straddle_report(const BoxExtension& ext, double dist, int max_order);

}  // namespace cornerext
