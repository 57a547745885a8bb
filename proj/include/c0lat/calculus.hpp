#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "c0lat/blaschke.hpp"
#include "c0lat/error.hpp"
#include "c0lat/linalg.hpp"
#include "c0lat/spectral.hpp"

namespace c0lat {

/// A square matrix with operator norm <= 1 + 1e-9.
class ContractionMatrix {
 public:
  static constexpr double kNormSlack = 1e-9;

  explicit ContractionMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionMismatchError("contraction must be square");
    if (linalg::op_norm(m_) > 1.0 + kNormSlack) throw DomainError("matrix is not a contraction");
  }

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index size() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

/// sum_k coeffs[k] T^k by Horner's rule.
inline Matrix apply_polynomial(const Matrix& t, std::span<const Complex> coeffs) {
  const Eigen::Index n = t.rows();
  if (t.cols() != n) throw DimensionMismatchError("operator must be square");
  Matrix acc = Matrix::Zero(n, n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * t;
    acc.diagonal().array() += *it;
  }
  return acc;
}

inline Matrix apply_polynomial(const ContractionMatrix& t, std::span<const Complex> coeffs) {
  return apply_polynomial(t.matrix(), coeffs);
}

namespace detail {

inline constexpr double kMaxResolventNorm = 1e12;

// (|a|/a)(aI - T)(I - conj(a) T)^{-1}, or T itself for a = 0.
inline Matrix elementary_factor(const Matrix& t, Complex a) {
  const Eigen::Index n = t.rows();
  if (a == Complex(0.0, 0.0)) return t;
  const Matrix eye = Matrix::Identity(n, n);
  const Matrix resolvent = (eye - std::conj(a) * t).partialPivLu().inverse();
  const double rn = linalg::op_norm(resolvent);
  if (!std::isfinite(rn) || rn > kMaxResolventNorm) throw SingularResolventError("resolvent norm exceeds 1e12");
  return (std::abs(a) / a) * (a * eye - t) * resolvent;
}

}  // namespace detail

/// B(T) = c * prod_a b_a(T)^mult, computed in closed form.
inline Matrix apply_blaschke(const Matrix& t, const BlaschkeProduct& b) {
  const Eigen::Index n = t.rows();
  if (t.cols() != n) throw DimensionMismatchError("operator must be square");
  if (n > 0 && linalg::spectral_radius(t) >= 1.0) throw DomainError("spectral radius must be < 1");
  Matrix acc = b.constant() * Matrix::Identity(n, n);
  for (const auto& z : b.zeros()) {
    const Matrix f = detail::elementary_factor(t, z.point);
    for (int k = 0; k < z.mult; ++k) acc = acc * f;
  }
  return acc;
}

inline Matrix apply_blaschke(const ContractionMatrix& t, const BlaschkeProduct& b) { return apply_blaschke(t.matrix(), b); }

/// ||B(rT) - B(T)|| for each r; the radial limit defining u(T).
inline std::vector<double> radial_validate(const Matrix& t, const BlaschkeProduct& b, std::span<const double> radii) {
  const Matrix limit = apply_blaschke(t, b);
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("radial parameter must lie in (0, 1)");
    out.push_back(linalg::op_norm(apply_blaschke(Matrix(r * t), b) - limit));
  }
  return out;
}

/// True when each residual is at most 1.1 times its predecessor.
inline bool radial_residuals_decreasing(std::span<const double> residuals, double slack = 0.1) {
  for (std::size_t i = 1; i < residuals.size(); ++i) {
    if (residuals[i] > (1.0 + slack) * residuals[i - 1]) return false;
  }
  return true;
}

struct MinimalFunctionResult {
  BlaschkeProduct function;
  JordanStructure structure;
  double annihilation_residual = 0.0;
  /// Smallest ||(m/b_a)(T)|| over the maximal proper divisors.
  double min_divisor_norm = std::numeric_limits<double>::infinity();
};

inline constexpr double kAnnihilationBound = 1e-7;
inline constexpr double kProperDivisorFloor = 1e-3;

namespace detail {

inline BlaschkeProduct blaschke_from_structure(const JordanStructure& s) {
  std::vector<BlaschkeProduct::Zero> zs;
  for (const auto& c : s) zs.push_back({c.center, c.largest_block()});
  return BlaschkeProduct(std::move(zs), 1.0);
}

inline bool is_c0_matrix(const Matrix& t) {
  if (t.rows() != t.cols()) return false;
  if (t.rows() == 0) return true;
  return linalg::op_norm(t) <= 1.0 + 1e-9 && linalg::spectral_radius(t) < 1.0 - 1e-9;
}

}  // namespace detail

/// m_T = prod_lambda b_lambda^{k(lambda)}, k the largest Jordan block size,
/// verified by ||m_T(T)|| <= 1e-7 and ||(m_T/b_lambda)(T)|| > 1e-3.
inline MinimalFunctionResult minimal_function_certified(const Matrix& t) {
  if (!detail::is_c0_matrix(t)) throw NotC0Error("minimal function requires a C0 matrix");
  MinimalFunctionResult out;
  if (t.rows() == 0) return out;
  out.structure = spectral::resolve_jordan_structure(t, [&](const JordanStructure& s) {
    const BlaschkeProduct m = detail::blaschke_from_structure(s);
    const double residual = linalg::op_norm(apply_blaschke(t, m));
    if (residual > kAnnihilationBound) return false;
    double floor = std::numeric_limits<double>::infinity();
    for (const auto& phi : maximal_proper_divisors(m)) {
      floor = std::min(floor, linalg::op_norm(apply_blaschke(t, phi)));
      if (floor <= kProperDivisorFloor) return false;
    }
    out.function = m;
    out.annihilation_residual = residual;
    out.min_divisor_norm = floor;
    return true;
  });
  return out;
}

inline BlaschkeProduct minimal_function(const Matrix& t) { return minimal_function_certified(t).function; }

struct C0Certificate {
  bool is_c0 = false;
  double spectral_radius = 0.0;
  std::optional<BlaschkeProduct> minimal_function;
  double annihilation_residual = 0.0;
};

/// C0 at matrix scale: a contraction with spectrum inside the open disk.
inline C0Certificate classify_c0(const Matrix& t) {
  if (t.rows() != t.cols()) throw DimensionMismatchError("operator must be square");
  C0Certificate cert;
  cert.spectral_radius = t.rows() == 0 ? 0.0 : linalg::spectral_radius(t);
  cert.is_c0 = detail::is_c0_matrix(t);
  if (!cert.is_c0) return cert;
  try {
    const MinimalFunctionResult m = minimal_function_certified(t);
    cert.minimal_function = m.function;
    cert.annihilation_residual = m.annihilation_residual;
  } catch (const VerificationFailure&) {
    cert.annihilation_residual = std::numeric_limits<double>::infinity();
  }
  return cert;
}

}  // namespace c0lat
