#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace c0lat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

// Jacobi is more accurate on the tiny problems that dominate here; the
// divide-and-conquer solver takes over once the Kronecker systems grow.
inline constexpr Eigen::Index kJacobiLimit = 48;

inline RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector(0);
  if (std::max(a.rows(), a.cols()) <= kJacobiLimit) {
    return Eigen::JacobiSVD<Matrix>(a).singularValues();
  }
  return Eigen::BDCSVD<Matrix>(a).singularValues();
}

/// Spectral (operator 2-) norm; 0 for an empty matrix.
inline double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

/// Number of singular values above rel * sigma_max.
inline Eigen::Index numerical_rank(const Matrix& a, double rel) {
  const RealVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel * s(0);
  return static_cast<Eigen::Index>(std::count_if(s.begin(), s.end(), [cut](double v) { return v > cut; }));
}

/// Orthonormal basis of the column space, singular values cut at
/// max(rel * sigma_max, floor).
inline Matrix orthonormal_range(const Matrix& a, double rel, double floor = 0.0) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  auto extract = [&](const auto& svd) {
    const RealVector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return Matrix(a.rows(), 0);
    const double cut = std::max(rel * s(0), floor);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cut) ++r;
    return Matrix(svd.matrixU().leftCols(r));
  };
  if (std::max(a.rows(), a.cols()) <= kJacobiLimit) {
    return extract(Eigen::JacobiSVD<Matrix>(a, Eigen::ComputeThinU));
  }
  return extract(Eigen::BDCSVD<Matrix>(a, Eigen::ComputeThinU));
}

/// Orthonormal basis of {x : a x ~ 0}: right singular vectors with singular
/// value <= max(rel * sigma_max, floor) (all of them when a is zero).
inline Matrix null_space(const Matrix& a, double rel, double floor = 0.0) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(n, n);
  auto extract = [&](const auto& svd) {
    const RealVector& s = svd.singularValues();
    const double cut = std::max(s.size() > 0 ? rel * s(0) : 0.0, floor);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cut) ++r;
    return Matrix(svd.matrixV().rightCols(n - r));
  };
  if (std::max(a.rows(), a.cols()) <= kJacobiLimit) {
    return extract(Eigen::JacobiSVD<Matrix>(a, Eigen::ComputeFullV));
  }
  return extract(Eigen::BDCSVD<Matrix>(a, Eigen::ComputeFullV));
}

/// Orthonormal basis of the orthogonal complement of the span of the
/// orthonormal columns of q.
inline Matrix orthogonal_complement(const Matrix& q) {
  const Eigen::Index n = q.rows();
  const Eigen::Index k = q.cols();
  if (k == 0) return Matrix::Identity(n, n);
  if (k >= n) return Matrix(n, 0);
  Eigen::HouseholderQR<Matrix> qr(q);
  Matrix full = qr.householderQ() * Matrix::Identity(n, n);
  return full.rightCols(n - k);
}

inline std::vector<Complex> eigenvalues(const Matrix& a) {
  if (a.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> solver(a, false);
  const Vector ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double spectral_radius(const Matrix& a) {
  double r = 0.0;
  for (const Complex& v : eigenvalues(a)) r = std::max(r, std::abs(v));
  return r;
}

/// Direct sum diag(a, b).
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

inline Matrix direct_sum(const std::vector<Matrix>& blocks) {
  Matrix out(0, 0);
  for (const Matrix& b : blocks) out = direct_sum(out, b);
  return out;
}

}  // namespace linalg
}  // namespace c0lat
