#include "cornerext/matjet.hpp"

#include <cmath>
#include <stdexcept>

namespace cornerext {

Mat Mat::identity(int n) {
  Mat I(n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1.0;
  return I;
}

Mat mat_add(const Mat& A, const Mat& B) {
  Mat C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

Mat mat_sub(const Mat& A, const Mat& B) {
  Mat C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
  return C;
}

Mat mat_scale(const Mat& A, double s) {
  Mat C = A;
  for (double& v : C.a) v *= s;
  return C;
}

Mat mat_mul(const Mat& A, const Mat& B) {
  Mat C(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.n; ++k) {
      const double aik = A.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < A.n; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

Mat mat_transpose(const Mat& A) {
  Mat C(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) C.at(i, j) = A.at(j, i);
  return C;
}

Mat mat_inverse(const Mat& A) {
  const int n = A.n;
  Mat W = A;
  Mat I = Mat::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(W.at(r, col)) > std::abs(W.at(piv, col))) piv = r;
    if (std::abs(W.at(piv, col)) < 1e-300) throw std::domain_error("singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(W.at(piv, j), W.at(col, j));
        std::swap(I.at(piv, j), I.at(col, j));
      }
    const double d = W.at(col, col);
    for (int j = 0; j < n; ++j) {
      W.at(col, j) /= d;
      I.at(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = W.at(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        W.at(r, j) -= f * W.at(col, j);
        I.at(r, j) -= f * I.at(col, j);
      }
    }
  }
  return I;
}

double mat_det(const Mat& A) {
  const int n = A.n;
  Mat W = A;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(W.at(r, col)) > std::abs(W.at(piv, col))) piv = r;
    if (W.at(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      det = -det;
      for (int j = 0; j < n; ++j) std::swap(W.at(piv, j), W.at(col, j));
    }
    det *= W.at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = W.at(r, col) / W.at(col, col);
      for (int j = col; j < n; ++j) W.at(r, j) -= f * W.at(col, j);
    }
  }
  return det;
}

double frobenius(const Mat& A) {
  double s = 0.0;
  for (double v : A.a) s += v * v;
  return std::sqrt(s);
}

double frobenius_dist(const Mat& A, const Mat& B) { return frobenius(mat_sub(A, B)); }

MatJet::MatJet(int n_, double base, int order)
    : n(n_), e(static_cast<std::size_t>(n_) * n_, Jet1(base, order)) {}

Mat MatJet::value() const {
  Mat V(n);
  for (int i = 0; i < n * n; ++i) V.a[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)].value();
  return V;
}

Mat MatJet::deriv(int k) const {
  Mat V(n);
  for (int i = 0; i < n * n; ++i) V.a[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i)].deriv(k);
  return V;
}

bool MatJet::finite() const {
  for (const Jet1& j : e)
    if (!j.finite()) return false;
  return true;
}

MatJet MatJet::constant(const Mat& A, double base, int order) {
  MatJet J(A.n, base, order);
  for (int i = 0; i < A.n * A.n; ++i)
    J.e[static_cast<std::size_t>(i)] = jet_constant(base, A.a[static_cast<std::size_t>(i)], order);
  return J;
}

MatJet MatJet::identity(int n, double base, int order) {
  return constant(Mat::identity(n), base, order);
}

MatJet matjet_add(const MatJet& A, const MatJet& B) {
  MatJet C = A;
  for (std::size_t i = 0; i < C.e.size(); ++i) C.e[i] = jet_add(A.e[i], B.e[i]);
  return C;
}

MatJet matjet_sub(const MatJet& A, const MatJet& B) {
  MatJet C = A;
  for (std::size_t i = 0; i < C.e.size(); ++i) C.e[i] = jet_sub(A.e[i], B.e[i]);
  return C;
}

MatJet matjet_scale(const MatJet& A, double s) {
  MatJet C = A;
  for (Jet1& j : C.e) j = jet_scale(j, s);
  return C;
}

MatJet matjet_mul(const MatJet& A, const MatJet& B) {
  MatJet C(A.n, A.base(), A.order());
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      Jet1 acc(A.base(), A.order());
      for (int k = 0; k < A.n; ++k) acc = jet_add(acc, jet_mul(A.at(i, k), B.at(k, j)));
      C.at(i, j) = acc;
    }
  return C;
}

MatJet matjet_inv(const MatJet& A) {
  const Mat V0inv = mat_inverse(A.value());
  const MatJet V0invJ = MatJet::constant(V0inv, A.base(), A.order());
  // A = V0 (I + E) with E = V0^-1 A - I nilpotent (zero value part):
  // A^-1 = (sum (-E)^j) V0^-1, terminating at j = order.
  MatJet E = matjet_sub(matjet_mul(V0invJ, A), MatJet::identity(A.n, A.base(), A.order()));
  MatJet acc = MatJet::identity(A.n, A.base(), A.order());
  MatJet pw = MatJet::identity(A.n, A.base(), A.order());
  for (int j = 1; j <= A.order(); ++j) {
    pw = matjet_mul(pw, E);
    acc = (j % 2 == 1) ? matjet_sub(acc, pw) : matjet_add(acc, pw);
  }
  return matjet_mul(acc, V0invJ);
}

MatJet matjet_exp(const MatJet& X) {
  const double nrm = frobenius(X.value());
  int s = 0;
  double scale = 1.0;
  while (nrm * scale > 0.25 && s < 60) {
    scale *= 0.5;
    ++s;
  }
  MatJet Y = matjet_scale(X, scale);
  MatJet term = MatJet::identity(X.n, X.base(), X.order());
  MatJet acc = term;
  for (int j = 1; j <= 40; ++j) {
    term = matjet_scale(matjet_mul(term, Y), 1.0 / j);
    acc = matjet_add(acc, term);
    double tn = 0.0;
    for (const Jet1& jt : term.e)
      for (double c : jt.coeffs()) tn = std::max(tn, std::abs(c));
    if (tn < 1e-20) break;
  }
  for (int i = 0; i < s; ++i) acc = matjet_mul(acc, acc);
  return acc;
}

MatJet matjet_log(const MatJet& A) {
  const MatJet E = matjet_sub(A, MatJet::identity(A.n, A.base(), A.order()));
  const double q = frobenius(E.value());
  if (!(q < 1.0)) throw std::domain_error("matrix log outside the chart ball ||A-I|| < 1");
  MatJet acc(A.n, A.base(), A.order());
  MatJet pw = MatJet::identity(A.n, A.base(), A.order());
  const int cap = 600;
  for (int j = 1; j <= cap; ++j) {
    pw = matjet_mul(pw, E);
    const MatJet term = matjet_scale(pw, (j % 2 == 1 ? 1.0 : -1.0) / j);
    acc = matjet_add(acc, term);
    double tn = 0.0;
    for (const Jet1& jt : term.e)
      for (double c : jt.coeffs()) tn = std::max(tn, std::abs(c));
    if (tn < 1e-18) break;
  }
  return acc;
}

Mat mat_exp(const Mat& X) {
  MatJet J = MatJet::constant(X, 0.0, 0);
  return matjet_exp(J).value();
}

Mat mat_log(const Mat& A) {
  MatJet J = MatJet::constant(A, 0.0, 0);
  return matjet_log(J).value();
}

}  // namespace cornerext
