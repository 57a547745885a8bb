#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "c0lat/blaschke.hpp"
#include "c0lat/calculus.hpp"
#include "c0lat/error.hpp"
#include "c0lat/jordan.hpp"
#include "c0lat/linalg.hpp"
#include "c0lat/spectral.hpp"
#include "c0lat/subspace.hpp"
#include "c0lat/tolerances.hpp"

/// Seeded random generators for the verification suites.
namespace c0lat::sampling {

using Rng = std::mt19937_64;

inline Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> g(0.0, std::numbers::sqrt2 / 2);
  return {g(rng), g(rng)};
}

inline Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian(rng);
  }
  return m;
}

inline Vector gaussian_vector(Rng& rng, Eigen::Index n) { return gaussian_matrix(rng, n, 1).col(0); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Haar-distributed unitary (QR of a Gaussian matrix with phases fixed).
inline Matrix random_unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

/// U diag(s) V* with singular values in [1, kappa]; extremes attained for n > 1.
inline Matrix random_conditioned(Rng& rng, Eigen::Index n, double kappa) {
  if (kappa < 1.0) throw PreconditionError("condition number must be >= 1");
  RealVector s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = uniform_real(rng, 1.0, kappa);
  if (n > 1) {
    s(0) = 1.0;
    s(n - 1) = kappa;
  }
  return random_unitary(rng, n) * s.cast<Complex>().asDiagonal() * random_unitary(rng, n).adjoint();
}

/// Uniform point of the disk |z| <= radius.
inline Complex random_disk_point(Rng& rng, double radius) {
  return std::polar(radius * std::sqrt(uniform_real(rng, 0.0, 1.0)), uniform_real(rng, 0.0, 2.0 * std::numbers::pi));
}

inline double pseudo_hyperbolic(Complex a, Complex b) { return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b); }

/// `count` points of |z| <= radius, pairwise pseudo-hyperbolic distance >= sep.
inline std::vector<Complex> separated_points(Rng& rng, int count, double radius, double sep) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Complex> pts;
    for (int tries = 0; tries < 200 && static_cast<int>(pts.size()) < count; ++tries) {
      const Complex p = random_disk_point(rng, radius);
      const bool ok = std::all_of(pts.begin(), pts.end(), [&](Complex q) { return pseudo_hyperbolic(p, q) >= sep; });
      if (ok) pts.push_back(p);
    }
    if (static_cast<int>(pts.size()) == count) return pts;
  }
  throw PreconditionError("could not place separated points");
}

struct BlaschkeOptions {
  int min_degree = 1;
  int max_degree = 6;
  double max_radius = 0.9;
  /// Probability that a new zero repeats an earlier one.
  double repeat_probability = 0.3;
  /// Probability that a fresh zero is placed at the origin.
  double origin_probability = 0.1;
  bool random_constant = true;
};

inline BlaschkeProduct random_blaschke(Rng& rng, const BlaschkeOptions& opt = {}) {
  const int degree = uniform_int(rng, opt.min_degree, opt.max_degree);
  std::vector<Complex> zeros;
  for (int k = 0; k < degree; ++k) {
    if (!zeros.empty() && coin(rng, opt.repeat_probability)) {
      zeros.push_back(zeros[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(zeros.size()) - 1))]);
    } else if (coin(rng, opt.origin_probability)) {
      zeros.emplace_back(0.0, 0.0);
    } else {
      zeros.push_back(random_disk_point(rng, opt.max_radius));
    }
  }
  const Complex c = opt.random_constant ? std::polar(1.0, uniform_real(rng, 0.0, 2.0 * std::numbers::pi)) : Complex(1.0);
  return BlaschkeProduct::from_zeros(zeros, c);
}

/// Blaschke product with exactly `distinct` separated simple or repeated zeros.
inline BlaschkeProduct random_blaschke_distinct(Rng& rng, int distinct, int max_mult, double radius = 0.9,
                                                double sep = 0.3) {
  std::vector<BlaschkeProduct::Zero> zs;
  for (Complex p : separated_points(rng, distinct, radius, sep)) zs.push_back({p, uniform_int(rng, 1, max_mult)});
  return BlaschkeProduct(std::move(zs), 1.0);
}

inline BlaschkeProduct scale_zeros(const BlaschkeProduct& b, double c) {
  std::vector<BlaschkeProduct::Zero> zs;
  for (const auto& z : b.zeros()) zs.push_back({c * z.point, z.mult});
  return BlaschkeProduct(std::move(zs), b.constant());
}

struct ModelOptions {
  int max_dim = 8;
  double max_radius = 0.9;
  int max_distinct = 4;
  int max_block = 4;
  double min_separation = 0.4;
};

/// Random Jordan model: a few separated eigenvalues, each with a random
/// partition of its multiplicity into blocks of size <= max_block.
inline JordanModel random_jordan_model(Rng& rng, const ModelOptions& opt = {}) {
  const int n = uniform_int(rng, 1, opt.max_dim);
  const int r = uniform_int(rng, 1, std::min(opt.max_distinct, n));
  const std::vector<Complex> pts = separated_points(rng, r, opt.max_radius, opt.min_separation);
  std::vector<int> mult(static_cast<std::size_t>(r), 1);
  for (int k = r; k < n; ++k) ++mult[static_cast<std::size_t>(uniform_int(rng, 0, r - 1))];
  std::vector<std::vector<int>> parts(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    int left = mult[static_cast<std::size_t>(i)];
    while (left > 0) {
      const int s = uniform_int(rng, 1, std::min(left, opt.max_block));
      parts[static_cast<std::size_t>(i)].push_back(s);
      left -= s;
    }
    std::sort(parts[static_cast<std::size_t>(i)].rbegin(), parts[static_cast<std::size_t>(i)].rend());
  }
  std::size_t count = 0;
  for (const auto& p : parts) count = std::max(count, p.size());
  std::vector<BlaschkeProduct> thetas;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<BlaschkeProduct::Zero> zs;
    for (int i = 0; i < r; ++i) {
      const auto& p = parts[static_cast<std::size_t>(i)];
      if (j < p.size()) zs.push_back({pts[static_cast<std::size_t>(i)], p[j]});
    }
    thetas.emplace_back(std::move(zs), 1.0);
  }
  return JordanModel(std::move(thetas));
}

struct RandomC0 {
  Matrix matrix;
  /// Jordan model of `matrix` by construction.
  JordanModel model;
};

/// T = c Q S(Theta) Q^{-1} for a random model Theta and cond(Q) <= kappa, with
/// c <= 1 chosen so that ||T|| <= 0.999.
inline RandomC0 random_c0(Rng& rng, const ModelOptions& opt = {}, double kappa = 2.0) {
  const JordanModel model = random_jordan_model(rng, opt);
  const Matrix s = jordan_operator(model);
  const Matrix q = random_conditioned(rng, s.rows(), kappa);
  Matrix t = q * s * q.inverse();
  const double norm = linalg::op_norm(t);
  double c = 1.0;
  if (norm > 0.999) {
    c = 0.999 / norm;
    t *= c;
  }
  if (c == 1.0) return {t, model};
  std::vector<BlaschkeProduct> thetas;
  for (const auto& th : model.thetas()) thetas.push_back(scale_zeros(th, c));
  return {t, JordanModel(std::move(thetas))};
}

/// A contraction with spectral radius <= rho: either a scaled Gaussian
/// matrix or a random C0 matrix built from a Jordan model.
inline Matrix random_contraction(Rng& rng, int max_dim, double rho) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix t;
    if (coin(rng)) {
      const int n = uniform_int(rng, 1, max_dim);
      t = gaussian_matrix(rng, n, n);
      t *= uniform_real(rng, 0.3, 1.0) / linalg::op_norm(t);
    } else {
      ModelOptions opt;
      opt.max_dim = max_dim;
      opt.max_radius = rho;
      t = random_c0(rng, opt).matrix;
    }
    if (linalg::spectral_radius(t) <= rho) return t;
  }
  throw PreconditionError("could not draw a contraction with the requested spectral radius");
}

/// Random invariant subspaces of a fixed matrix: ranges and kernels of
/// p(T) = prod (T - lambda)^e over the eigenvalue clusters, and cyclic
/// subspaces of p(T) g for Gaussian g, closed under up to three random meets
/// or joins. Optional anchors (for instance ker X) are mixed in by joins.
class InvariantSampler {
 public:
  explicit InvariantSampler(Matrix t, const Tolerances& tol = {})
      : t_(std::move(t)), tol_(tol), structure_(spectral::jordan_structure(t_)) {}

  const Matrix& matrix() const noexcept { return t_; }
  const JordanStructure& structure() const noexcept { return structure_; }

  void add_anchor(Subspace s) {
    if (!is_invariant(t_, s, loose())) throw PreconditionError("anchor subspace is not invariant");
    anchors_.push_back(std::move(s));
  }

  Subspace draw(Rng& rng) const {
    for (int attempt = 0; attempt < 16; ++attempt) {
      Subspace s = primitive(rng);
      const int compositions = uniform_int(rng, 0, 3);
      for (int c = 0; c < compositions; ++c) {
        const Subspace other = primitive(rng);
        s = coin(rng) ? meet(s, other, tol_) : join(s, other, tol_);
      }
      if (is_invariant(t_, s, tol_)) return s;
    }
    throw VerificationFailure("invariant subspace sampler produced non-invariant subspaces");
  }

 private:
  Tolerances loose() const {
    Tolerances t = tol_;
    t.invariance = std::max(t.invariance, 1e-7);
    return t;
  }

  // p(T) = prod (T - c)^e, with floor = rank * prod max(1, ||T - c||)^e.
  std::pair<Matrix, double> random_polynomial(Rng& rng) const {
    const Eigen::Index n = t_.rows();
    Matrix p = Matrix::Identity(n, n);
    double floor = tol_.rank;
    for (const auto& c : structure_) {
      const int e = uniform_int(rng, 0, c.largest_block());
      const Matrix f = t_ - c.center * Matrix::Identity(n, n);
      const double fn = std::max(1.0, linalg::op_norm(f));
      for (int k = 0; k < e; ++k) {
        p = p * f;
        floor *= fn;
      }
    }
    return {p, floor};
  }

  Subspace range_of(const std::pair<Matrix, double>& p) const {
    return Subspace::from_orthonormal(linalg::orthonormal_range(p.first, tol_.rank, p.second));
  }

  Matrix kernel_of(const std::pair<Matrix, double>& p) const {
    return linalg::null_space(p.first, tol_.rank, p.second);
  }

  Subspace cyclic_of(const std::pair<Matrix, double>& p, const Vector& g) const {
    const Vector x = p.first * g;
    if (x.norm() <= p.second * g.norm()) return Subspace::zero(t_.rows());
    return cyclic_subspace(t_, x, tol_);
  }

  Subspace primitive(Rng& rng) const {
    const Eigen::Index n = t_.rows();
    const int kind = uniform_int(rng, 0, anchors_.empty() ? 3 : 4);
    switch (kind) {
      case 0:
        return range_of(random_polynomial(rng));
      case 1:
        return Subspace::from_orthonormal(kernel_of(random_polynomial(rng)));
      case 2:
        return cyclic_of(random_polynomial(rng), gaussian_vector(rng, n));
      case 3: {
        const Matrix k = kernel_of(random_polynomial(rng));
        if (k.cols() == 0) return Subspace::zero(n);
        const Vector g = k * gaussian_vector(rng, k.cols());
        return cyclic_of(random_polynomial(rng), g);
      }
      default: {
        const Subspace& a = anchors_[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(anchors_.size()) - 1))];
        return coin(rng) ? a : join(a, cyclic_of(random_polynomial(rng), gaussian_vector(rng, n)), tol_);
      }
    }
  }

  Matrix t_;
  Tolerances tol_;
  JordanStructure structure_;
  std::vector<Subspace> anchors_;
};

}  // namespace c0lat::sampling
