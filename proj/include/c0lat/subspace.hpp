#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "c0lat/error.hpp"
#include "c0lat/linalg.hpp"
#include "c0lat/spectral.hpp"
#include "c0lat/tolerances.hpp"

namespace c0lat {

/// A subspace of C^n held as an orthonormal column basis (possibly empty).
class Subspace {
 public:
  Subspace() = default;

  /// Takes ownership of a basis that must already be orthonormal.
  static Subspace from_orthonormal(Matrix basis) {
    if (basis.cols() > basis.rows()) throw DimensionMismatchError("more basis vectors than ambient dimension");
    if (basis.cols() > 0) {
      const Matrix gram = basis.adjoint() * basis;
      const double err = (gram - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
      if (err > 1e-10) throw PreconditionError("basis columns are not orthonormal");
    }
    Subspace s;
    s.ambient_ = basis.rows();
    s.basis_ = std::move(basis);
    return s;
  }

  /// Column span of arbitrary vectors, rank cut at rel * sigma_max.
  static Subspace span(const Matrix& vectors, double rel = Tolerances{}.rank) {
    Subspace s;
    s.ambient_ = vectors.rows();
    s.basis_ = linalg::orthonormal_range(vectors, rel);
    return s;
  }

  static Subspace zero(Eigen::Index n) {
    Subspace s;
    s.ambient_ = n;
    s.basis_ = Matrix(n, 0);
    return s;
  }

  static Subspace full(Eigen::Index n) {
    Subspace s;
    s.ambient_ = n;
    s.basis_ = Matrix::Identity(n, n);
    return s;
  }

  Eigen::Index ambient_dim() const noexcept { return ambient_; }
  Eigen::Index dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }
  Matrix projector() const { return basis_ * basis_.adjoint(); }

  /// Part of `vectors` orthogonal to this subspace.
  Matrix residual(const Matrix& vectors) const {
    if (dim() == 0) return vectors;
    return vectors - basis_ * (basis_.adjoint() * vectors);
  }

  Subspace orthogonal_complement() const {
    Subspace s;
    s.ambient_ = ambient_;
    s.basis_ = linalg::orthogonal_complement(basis_);
    return s;
  }

 private:
  Eigen::Index ambient_ = 0;
  Matrix basis_;
};

namespace detail {

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatchError("subspaces live in different ambient spaces");
}

}  // namespace detail

/// Span of A and B.
inline Subspace join(const Subspace& a, const Subspace& b, const Tolerances& tol = {}) {
  detail::require_same_ambient(a, b);
  if (a.dim() == 0) return b;
  if (b.dim() == 0) return a;
  Matrix stacked(a.ambient_dim(), a.dim() + b.dim());
  stacked << a.basis(), b.basis();
  return Subspace::span(stacked, tol.rank);
}

/// Intersection of A and B: the principal directions whose principal angle
/// is at most tol.meet_angle. Angles are read off as sines of (I - P_A) B,
/// which stays accurate for near-zero angles where cosines do not.
inline Subspace meet(const Subspace& a, const Subspace& b, const Tolerances& tol = {}) {
  detail::require_same_ambient(a, b);
  const Eigen::Index n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(n);
  const Subspace& big = a.dim() >= b.dim() ? a : b;
  const Subspace& small = a.dim() >= b.dim() ? b : a;
  const Matrix sines = big.residual(small.basis());
  Eigen::JacobiSVD<Matrix> svd(sines, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const Eigen::Index k = small.dim();
  // s has min(n, k) = k entries in descending order
  Eigen::Index first = 0;
  while (first < k && s(first) > tol.meet_angle) ++first;
  if (first == k) return Subspace::zero(n);
  const Matrix directions = small.basis() * svd.matrixV().rightCols(k - first);
  return Subspace::span(directions, tol.rank);
}

inline double containment_residual(const Subspace& a, const Subspace& b) {
  detail::require_same_ambient(a, b);
  if (b.dim() == 0) return 0.0;
  return linalg::op_norm(a.residual(b.basis()));
}

/// B is contained in A.
inline bool contains(const Subspace& a, const Subspace& b, const Tolerances& tol = {}) {
  detail::require_same_ambient(a, b);
  if (b.dim() > a.dim()) return false;
  return containment_residual(a, b) <= tol.equality;
}

inline bool equals(const Subspace& a, const Subspace& b, const Tolerances& tol = {}) {
  detail::require_same_ambient(a, b);
  return a.dim() == b.dim() && contains(a, b, tol) && contains(b, a, tol);
}

/// Largest principal angle; pi/2 when the dimensions differ.
inline double distance(const Subspace& a, const Subspace& b) {
  detail::require_same_ambient(a, b);
  if (a.dim() != b.dim()) return std::numbers::pi / 2;
  if (a.dim() == 0) return 0.0;
  return std::asin(std::min(1.0, std::max(containment_residual(a, b), containment_residual(b, a))));
}

struct InvarianceResult {
  bool invariant = false;
  double residual = 0.0;
  explicit operator bool() const noexcept { return invariant; }
};

/// Residual ||(I - P_M) T P_M||; invariant iff it is within
/// tol.invariance * max(1, ||T||).
inline InvarianceResult is_invariant(const Matrix& t, const Subspace& m, const Tolerances& tol = {}) {
  if (t.rows() != t.cols() || t.rows() != m.ambient_dim()) throw DimensionMismatchError("operator/subspace size mismatch");
  if (m.dim() == 0) return {true, 0.0};
  const double residual = linalg::op_norm(m.residual(t * m.basis()));
  return {residual <= tol.invariance * std::max(1.0, linalg::op_norm(t)), residual};
}

/// Krylov closure span{x, Tx, T^2 x, ...}, built by Arnoldi with
/// reorthogonalization. Stops when the next direction drops below
/// tol.rank * max(1, ||T||).
inline Subspace cyclic_subspace(const Matrix& t, const Vector& x, const Tolerances& tol = {}) {
  const Eigen::Index n = t.rows();
  if (t.cols() != n || x.size() != n) throw DimensionMismatchError("operator/vector size mismatch");
  const double xn = x.norm();
  if (xn == 0.0) return Subspace::zero(n);
  const double cut = tol.rank * std::max(1.0, linalg::op_norm(t));
  Matrix q(n, n);
  q.col(0) = x / xn;
  Eigen::Index k = 1;
  while (k < n) {
    Vector w = t * q.col(k - 1);
    for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(k) * (q.leftCols(k).adjoint() * w);
    const double wn = w.norm();
    if (wn <= cut) break;
    q.col(k++) = w / wn;
  }
  return Subspace::from_orthonormal(q.leftCols(k));
}

/// Smallest m such that the cyclic subspaces of m random vectors span C^n,
/// tried over `trials` seeded draws per m and cross-checked against the
/// largest geometric multiplicity (the exact value for matrices).
inline int cyclic_multiplicity(const Matrix& t, std::uint64_t seed = 0, int trials = 20, const Tolerances& tol = {}) {
  const Eigen::Index n = t.rows();
  if (t.cols() != n) throw DimensionMismatchError("operator must be square");
  if (n > 12) throw CapExceededError("cyclic_multiplicity supports n <= 12");
  if (n == 0) return 0;
  const int lower = spectral::max_geometric_multiplicity(t);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int m = 1; m <= n; ++m) {
    for (int trial = 0; trial < trials; ++trial) {
      Subspace acc = Subspace::zero(n);
      for (int j = 0; j < m; ++j) {
        Vector x(n);
        for (Eigen::Index i = 0; i < n; ++i) x(i) = Complex(gauss(rng), gauss(rng));
        acc = join(acc, cyclic_subspace(t, x, tol), tol);
      }
      if (acc.dim() == n) {
        if (m != lower) throw VerificationFailure("random cyclic search disagrees with the deflation certificate");
        return m;
      }
    }
  }
  throw VerificationFailure("no spanning family of cyclic subspaces found");
}

struct TripleVerdict {
  bool holds = false;
  /// Largest principal angle between the two sides.
  double residual = 0.0;
  Subspace lhs;
  Subspace rhs;
  explicit operator bool() const noexcept { return holds; }
};

/// L ∩ (M ∨ N) = (L ∩ M) ∨ N, for N ⊆ L.
inline TripleVerdict check_modular_triple(const Subspace& l, const Subspace& m, const Subspace& n,
                                          const Tolerances& tol = {}) {
  detail::require_same_ambient(l, m);
  detail::require_same_ambient(l, n);
  if (!contains(l, n, tol)) throw PreconditionError("modular triple requires N ⊆ L");
  TripleVerdict v;
  v.lhs = meet(l, join(m, n, tol), tol);
  v.rhs = join(meet(l, m, tol), n, tol);
  v.holds = equals(v.lhs, v.rhs, tol);
  v.residual = distance(v.lhs, v.rhs);
  return v;
}

/// L ∩ (M ∨ N) = (L ∩ M) ∨ (L ∩ N).
inline TripleVerdict check_distributive_triple(const Subspace& l, const Subspace& m, const Subspace& n,
                                               const Tolerances& tol = {}) {
  detail::require_same_ambient(l, m);
  detail::require_same_ambient(l, n);
  TripleVerdict v;
  v.lhs = meet(l, join(m, n, tol), tol);
  v.rhs = join(meet(l, m, tol), meet(l, n, tol), tol);
  v.holds = equals(v.lhs, v.rhs, tol);
  v.residual = distance(v.lhs, v.rhs);
  return v;
}

}  // namespace c0lat
