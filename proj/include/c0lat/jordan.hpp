#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "c0lat/blaschke.hpp"
#include "c0lat/calculus.hpp"
#include "c0lat/error.hpp"
#include "c0lat/linalg.hpp"
#include "c0lat/modelspace.hpp"
#include "c0lat/subspace.hpp"
#include "c0lat/tolerances.hpp"

namespace c0lat {

// ---------------------------------------------------------------------------
// Jordan models

/// A finite model function theta_1, ..., theta_m with theta_{j+1} | theta_j.
/// Trailing constants are trimmed; the operator is S(theta_1) ⊕ ... ⊕ S(theta_m).
class JordanModel {
 public:
  JordanModel() = default;

  explicit JordanModel(std::vector<BlaschkeProduct> thetas) : thetas_(std::move(thetas)) {
    while (!thetas_.empty() && thetas_.back().is_constant()) thetas_.pop_back();
    for (std::size_t j = 0; j + 1 < thetas_.size(); ++j) {
      if (!divides(thetas_[j + 1], thetas_[j])) throw PreconditionError("model functions must form a divisibility chain");
    }
    for (const auto& t : thetas_) {
      if (t.is_constant()) throw PreconditionError("constant model function before a nonconstant one");
    }
  }

  const std::vector<BlaschkeProduct>& thetas() const noexcept { return thetas_; }
  std::size_t size() const noexcept { return thetas_.size(); }
  bool empty() const noexcept { return thetas_.empty(); }

  std::size_t dimension() const noexcept {
    std::size_t d = 0;
    for (const auto& t : thetas_) d += t.degree();
    return d;
  }

 private:
  std::vector<BlaschkeProduct> thetas_;
};

/// Componentwise equivalence of two models, zeros matched within `tol`.
inline bool models_equiv(const JordanModel& a, const JordanModel& b, double tol = 0.0) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const bool same = tol > 0.0 ? equiv_within(a.thetas()[j], b.thetas()[j], tol) : equiv(a.thetas()[j], b.thetas()[j]);
    if (!same) return false;
  }
  return true;
}

/// S(Theta) = ⊕ S(theta_j).
inline Matrix jordan_operator(const JordanModel& model) {
  std::vector<Matrix> blocks;
  for (const auto& t : model.thetas()) blocks.push_back(compressed_shift(t).matrix);
  return linalg::direct_sum(blocks);
}

// ---------------------------------------------------------------------------
// Intertwiners

struct IntertwinerSpace {
  Matrix t1;
  Matrix t2;
  /// n2 x n1 matrices X with X T1 = T2 X, unit Frobenius norm.
  std::vector<Matrix> basis;
  Eigen::Index max_rank = 0;
  /// An element of the space attaining max_rank.
  Matrix max_rank_witness;
  /// Largest ||X T1 - T2 X|| over the basis.
  double max_residual = 0.0;
};

inline double intertwining_residual(const Matrix& x, const Matrix& t1, const Matrix& t2) {
  return linalg::op_norm(x * t1 - t2 * x);
}

inline double intertwining_scale(const Matrix& t1, const Matrix& t2) {
  return std::max({1.0, linalg::op_norm(t1), linalg::op_norm(t2)});
}

namespace detail {

inline constexpr Eigen::Index kMaxIntertwinerSize = 16;
inline constexpr int kRankProbes = 32;

inline Matrix random_combination(const std::vector<Matrix>& basis, Eigen::Index rows, Eigen::Index cols,
                                 std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Matrix x = Matrix::Zero(rows, cols);
  for (const auto& b : basis) x += Complex(gauss(rng), gauss(rng)) * b;
  return x;
}

}  // namespace detail

/// Null space of X -> X T1 - T2 X, from the (n1 n2)-square Kronecker system,
/// cut at tol.rank * (||T1|| + ||T2||).
/// max_rank is certified on 32 seeded random combinations.
inline IntertwinerSpace intertwiner_space(const Matrix& t1, const Matrix& t2, std::uint64_t seed = 0,
                                          const Tolerances& tol = {}) {
  const Eigen::Index n1 = t1.rows();
  const Eigen::Index n2 = t2.rows();
  if (t1.cols() != n1 || t2.cols() != n2) throw DimensionMismatchError("operators must be square");
  if (n1 > detail::kMaxIntertwinerSize || n2 > detail::kMaxIntertwinerSize) {
    throw CapExceededError("intertwiner_space supports sizes up to 16");
  }
  IntertwinerSpace out{t1, t2, {}, 0, Matrix::Zero(n2, n1), 0.0};
  if (n1 == 0 || n2 == 0) return out;
  // vec(X T1 - T2 X) = (T1^T ⊗ I - I ⊗ T2) vec(X), column-major vec
  const Eigen::Index n = n1 * n2;
  Matrix k = Matrix::Zero(n, n);
  for (Eigen::Index a = 0; a < n1; ++a) {
    for (Eigen::Index b = 0; b < n1; ++b) {
      k.block(a * n2, b * n2, n2, n2).diagonal().array() += t1(b, a);
    }
    k.block(a * n2, a * n2, n2, n2) -= t2;
  }
  const Matrix null = linalg::null_space(k, tol.rank, tol.rank * (linalg::op_norm(t1) + linalg::op_norm(t2)));
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Matrix x = Eigen::Map<const Matrix>(null.col(c).data(), n2, n1);
    out.max_residual = std::max(out.max_residual, intertwining_residual(x, t1, t2));
    out.basis.push_back(std::move(x));
  }
  std::mt19937_64 rng(seed);
  for (int probe = 0; probe < detail::kRankProbes && !out.basis.empty(); ++probe) {
    Matrix x = detail::random_combination(out.basis, n2, n1, rng);
    const Eigen::Index r = linalg::numerical_rank(x, tol.rank);
    if (r > out.max_rank) {
      out.max_rank = r;
      out.max_rank_witness = std::move(x);
    }
    if (out.max_rank == std::min(n1, n2)) break;
  }
  return out;
}

/// An invertible X with X T1 = T2 X (the matrix-scale quasiaffinity), or
/// nullopt. Among up to 32 seeded combinations the best conditioned wins.
inline std::optional<Matrix> find_quasiaffinity(const Matrix& t1, const Matrix& t2, std::uint64_t seed = 0,
                                                const Tolerances& tol = {}) {
  const Eigen::Index n = t1.rows();
  if (t2.rows() != n) {
    (void)intertwiner_space(t1, t2, seed, tol);  // size checks
    return std::nullopt;
  }
  if (n == 0) return Matrix(0, 0);
  const double scale = intertwining_scale(t1, t2);
  if (linalg::op_norm(t1 - t2) <= tol.intertwining * scale) return Matrix(Matrix::Identity(n, n));
  const IntertwinerSpace space = intertwiner_space(t1, t2, seed, tol);
  if (space.max_rank < n) return std::nullopt;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::optional<Matrix> best;
  double best_cond = 0.0;
  for (int probe = 0; probe < detail::kRankProbes; ++probe) {
    Matrix x = probe == 0 ? space.max_rank_witness : detail::random_combination(space.basis, n, n, rng);
    const RealVector s = linalg::singular_values(x);
    if (s(0) == 0.0 || s(n - 1) <= tol.rank * s(0)) continue;
    const double inv_cond = s(n - 1) / s(0);
    if (inv_cond > best_cond) {
      best_cond = inv_cond;
      best = x / s(0);
    }
  }
  return best;
}

struct QuasisimilarityCertificate {
  Matrix forward;   // forward T1 = T2 forward
  Matrix backward;  // backward T2 = T1 backward
  double forward_residual = 0.0;
  double backward_residual = 0.0;
};

inline std::optional<QuasisimilarityCertificate> quasisimilarity_certificate(const Matrix& t1, const Matrix& t2,
                                                                             std::uint64_t seed = 0,
                                                                             const Tolerances& tol = {}) {
  auto fwd = find_quasiaffinity(t1, t2, seed, tol);
  if (!fwd) return std::nullopt;
  auto bwd = find_quasiaffinity(t2, t1, seed + 1, tol);
  if (!bwd) return std::nullopt;
  return QuasisimilarityCertificate{*fwd, *bwd, intertwining_residual(*fwd, t1, t2), intertwining_residual(*bwd, t2, t1)};
}

inline bool are_quasisimilar(const Matrix& t1, const Matrix& t2, std::uint64_t seed = 0, const Tolerances& tol = {}) {
  return quasisimilarity_certificate(t1, t2, seed, tol).has_value();
}

// ---------------------------------------------------------------------------
// Lattice maps

/// X_*(M) = closure of X M; directions shrunk below tol.rank * ||X|| are dropped.
inline Subspace lattice_map(const Matrix& x, const Subspace& m, const Tolerances& tol = {}) {
  if (x.cols() != m.ambient_dim()) throw DimensionMismatchError("map/subspace size mismatch");
  if (m.dim() == 0 || x.rows() == 0) return Subspace::zero(x.rows());
  const double cut = tol.rank * linalg::op_norm(x);
  Eigen::JacobiSVD<Matrix> svd(x * m.basis(), Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cut) ++r;
  return Subspace::from_orthonormal(svd.matrixU().leftCols(r));
}

/// X^{-1}(N) = ker (I - P_N) X. Directions mapped within
/// tol.meet_angle * ||X|| of N count as preimage, the same cut meet() uses.
inline Subspace lattice_preimage(const Matrix& x, const Subspace& n, const Tolerances& tol = {}) {
  if (x.rows() != n.ambient_dim()) throw DimensionMismatchError("map/subspace size mismatch");
  const Eigen::Index cols = x.cols();
  if (cols == 0) return Subspace::zero(0);
  const double xn = linalg::op_norm(x);
  if (xn == 0.0) return Subspace::full(cols);
  const Matrix outside = n.residual(x);
  Eigen::JacobiSVD<Matrix> svd(outside, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > tol.meet_angle * xn) ++r;
  return Subspace::from_orthonormal(svd.matrixV().rightCols(cols - r));
}

// ---------------------------------------------------------------------------
// Jordan model of a C0 matrix

struct JordanModelResult {
  JordanModel model;
  JordanStructure structure;
  BlaschkeProduct minimal_function;
  QuasisimilarityCertificate certificate;
};

namespace detail {

inline JordanModel model_from_structure(const JordanStructure& s) {
  int count = 0;
  for (const auto& c : s) count = std::max(count, c.block_count());
  std::vector<BlaschkeProduct> thetas;
  for (int j = 0; j < count; ++j) {
    std::vector<BlaschkeProduct::Zero> zs;
    for (const auto& c : s) {
      if (j < c.block_count()) zs.push_back({c.center, c.block_sizes[static_cast<std::size_t>(j)]});
    }
    thetas.emplace_back(std::move(zs), 1.0);
  }
  return JordanModel(std::move(thetas));
}

}  // namespace detail

/// theta_j = prod_lambda b_lambda^{s_j(lambda)}, s_1 >= s_2 >= ... the Jordan
/// block sizes at lambda, certified by a two-sided quasiaffinity between T
/// and the Jordan operator.
inline JordanModelResult jordan_model_certified(const Matrix& t, std::uint64_t seed = 0, const Tolerances& tol = {}) {
  if (t.rows() > 12) throw CapExceededError("jordan_model supports n <= 12");
  const MinimalFunctionResult m = minimal_function_certified(t);
  JordanModelResult out;
  out.structure = m.structure;
  out.minimal_function = m.function;
  out.model = detail::model_from_structure(m.structure);
  if (t.rows() == 0) return out;
  auto cert = quasisimilarity_certificate(t, jordan_operator(out.model), seed, tol);
  if (!cert) throw VerificationFailure("no quasisimilarity between T and its Jordan operator");
  out.certificate = std::move(*cert);
  return out;
}

inline JordanModel jordan_model(const Matrix& t, std::uint64_t seed = 0, const Tolerances& tol = {}) {
  return jordan_model_certified(t, seed, tol).model;
}

struct PropertyPResult {
  bool holds = true;
  std::string reasoning;
  explicit operator bool() const noexcept { return holds; }
};

/// Property (P) holds iff the gcd of theta_j over all j < omega is constant.
/// A finite model is padded with constants beyond its length, so the gcd is
/// always 1 here.
inline PropertyPResult has_property_P(const JordanModel& model) {
  BlaschkeProduct g;
  // gcd over the padded sequence includes the constant theta_{m+1}
  if (!model.empty()) g = gcd(model.thetas().back(), BlaschkeProduct());
  PropertyPResult r;
  r.holds = g.is_constant();
  r.reasoning = "model has " + std::to_string(model.size()) +
                " nonconstant functions; theta_j = 1 for j >= " + std::to_string(model.size() + 1) +
                ", so gcd_{j<omega} theta_j = " + to_string(g);
  return r;
}

// ---------------------------------------------------------------------------
// Triangularization

struct TriangularizationReport {
  Matrix top;       // T restricted to M
  Matrix bottom;    // compression of T to the orthogonal complement
  Matrix coupling;  // upper-right block
  double lower_left_residual = 0.0;
  C0Certificate whole;
  C0Certificate top_cert;
  C0Certificate bottom_cert;
  /// T is C0 iff both diagonal blocks are.
  bool consistent = false;
};

inline TriangularizationReport triangularization_check(const Matrix& t, const Subspace& m, const Tolerances& tol = {}) {
  if (!is_invariant(t, m, tol)) throw PreconditionError("subspace is not invariant");
  const Eigen::Index n = t.rows();
  const Eigen::Index k = m.dim();
  Matrix u(n, n);
  u << m.basis(), linalg::orthogonal_complement(m.basis());
  const Matrix tt = u.adjoint() * t * u;
  TriangularizationReport r;
  r.top = tt.topLeftCorner(k, k);
  r.bottom = tt.bottomRightCorner(n - k, n - k);
  r.coupling = tt.topRightCorner(k, n - k);
  r.lower_left_residual = linalg::op_norm(tt.bottomLeftCorner(n - k, k));
  r.whole = classify_c0(t);
  r.top_cert = classify_c0(r.top);
  r.bottom_cert = classify_c0(r.bottom);
  r.consistent = r.whole.is_c0 == (r.top_cert.is_c0 && r.bottom_cert.is_c0);
  return r;
}

// ---------------------------------------------------------------------------
// Brute-force invariant subspace oracle

/// All 2^n spans of eigenvector subsets; exactly Lat(T) when the eigenvalues
/// are distinct. Index bit i of the position selects eigenvector i.
inline std::vector<Subspace> brute_force_lat(const Matrix& t, const Tolerances& tol = {}) {
  const Eigen::Index n = t.rows();
  if (t.cols() != n) throw DimensionMismatchError("operator must be square");
  if (n > 10) throw CapExceededError("brute_force_lat supports n <= 10");
  Eigen::ComplexEigenSolver<Matrix> solver(t);
  const Vector ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(ev(i)) >= 1.0) throw DomainError("eigenvalues must lie in the open disk");
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(ev(i) - ev(j)) < 1e-6) throw PreconditionError("repeated eigenvalue: brute-force oracle invalid");
    }
  }
  const Matrix& vecs = solver.eigenvectors();
  std::vector<Subspace> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Matrix cols(n, std::popcount(mask));
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) cols.col(c++) = vecs.col(i);
    }
    out.push_back(Subspace::span(cols, tol.rank));
  }
  return out;
}

}  // namespace c0lat
