#pragma once

#include <vector>

#include "cornerext/jet.hpp"

namespace cornerext {

/// Small dense row-major matrix.
struct Mat {
  int n = 0;  // square
  std::vector<double> a;

  Mat() = default;
  explicit Mat(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  static Mat identity(int n);
};

Mat mat_add(const Mat& A, const Mat& B);
Mat mat_sub(const Mat& A, const Mat& B);
Mat mat_scale(const Mat& A, double s);
Mat mat_mul(const Mat& A, const Mat& B);
Mat mat_transpose(const Mat& A);
Mat mat_inverse(const Mat& A);  // Gauss-Jordan; throws std::domain_error if singular
double mat_det(const Mat& A);
double frobenius(const Mat& A);
double frobenius_dist(const Mat& A, const Mat& B);

/// Square matrix whose entries are univariate jets sharing base and order:
/// the jet of a matrix-valued curve. Immutable in spirit; arithmetic
/// returns new values.
struct MatJet {
  int n = 0;
  std::vector<Jet1> e;  // row-major

  MatJet() = default;
  MatJet(int n_, double base, int order);
  const Jet1& at(int i, int j) const { return e[static_cast<std::size_t>(i * n + j)]; }
  Jet1& at(int i, int j) { return e[static_cast<std::size_t>(i * n + j)]; }
  double base() const { return e.empty() ? 0.0 : e[0].base(); }
  int order() const { return e.empty() ? 0 : e[0].order(); }
  Mat value() const;
  Mat deriv(int k) const;  // raw k-th derivative matrix
  bool finite() const;

  static MatJet constant(const Mat& A, double base, int order);
  static MatJet identity(int n, double base, int order);
};

MatJet matjet_add(const MatJet& A, const MatJet& B);
MatJet matjet_sub(const MatJet& A, const MatJet& B);
MatJet matjet_scale(const MatJet& A, double s);
MatJet matjet_mul(const MatJet& A, const MatJet& B);  // entrywise jet_mul products

/// Jet-level inverse: the value part by Gauss-Jordan, the nilpotent part by
/// the terminating Neumann recursion. Throws std::domain_error when the
/// value matrix is singular.
MatJet matjet_inv(const MatJet& A);

/// Matrix exponential of a jet (scaling and squaring + truncated series).
MatJet matjet_exp(const MatJet& X);

/// Principal matrix logarithm of a jet with ||value - I||_F < 1 (the chart
/// neighbourhood); mercator series on A - I. Throws std::domain_error when
/// the value leaves the ball.
MatJet matjet_log(const MatJet& A);

// Value-level exp/log used for sampling group elements.
Mat mat_exp(const Mat& X);
Mat mat_log(const Mat& A);  // ||A - I||_F < 1

}  // namespace cornerext
