#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "c0lat/blaschke.hpp"
#include "c0lat/error.hpp"
#include "c0lat/linalg.hpp"
#include "c0lat/subspace.hpp"
#include "c0lat/tolerances.hpp"

namespace c0lat {

/// Smallest power of two N >= max(4d, 64) whose circle-quadrature aliasing
/// error for the rational functions of H(theta) is negligible. Coefficients
/// of functions with a pole of order m at 1/conj(a) decay like n^(m-1)|a|^n,
/// so N also has to satisfy N^(2m) |a|^N <= 1e-18 for every zero a.
inline std::size_t quadrature_size(const BlaschkeProduct& theta) {
  constexpr std::size_t kMaxNodes = std::size_t{1} << 16;
  std::size_t n = 64;
  while (n < 4 * theta.degree()) n *= 2;
  auto aliasing_ok = [&](std::size_t nodes) {
    for (const auto& z : theta.zeros()) {
      const double r = std::abs(z.point);
      if (r == 0.0) continue;
      const double log_bound = 2.0 * z.mult * std::log(static_cast<double>(nodes)) + nodes * std::log(r);
      if (log_bound > std::log(1e-18)) return false;
    }
    return true;
  };
  while (n < kMaxNodes && !aliasing_ok(n)) n *= 2;
  return n;
}

/// H(theta) = H^2 ⊖ theta H^2 with its Takenaka–Malmquist orthonormal basis
///   e_k(z) = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} (z - a_j)/(1 - conj(a_j) z)
/// (0-based k) and a uniform N-point circle quadrature for inner products.
class ModelSpace {
 public:
  using Function = std::function<Complex(Complex)>;

  explicit ModelSpace(BlaschkeProduct theta, std::optional<std::vector<Complex>> zero_order = std::nullopt)
      : theta_(std::move(theta)) {
    if (theta_.degree() == 0) throw DomainError("model space of a constant is trivial");
    order_ = zero_order ? std::move(*zero_order) : theta_.zero_list();
    if (!equiv(BlaschkeProduct::from_zeros(order_), theta_)) {
      throw PreconditionError("zero order must list the zeros of theta with multiplicity");
    }
    const std::size_t n = quadrature_size(theta_);
    nodes_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      nodes_[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    }
    basis_values_ = Matrix(static_cast<Eigen::Index>(n), dim());
    for (std::size_t j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < dim(); ++k) basis_values_(static_cast<Eigen::Index>(j), k) = basis_eval(k, nodes_[j]);
    }
  }

  const BlaschkeProduct& theta() const noexcept { return theta_; }
  const std::vector<Complex>& zero_order() const noexcept { return order_; }
  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(order_.size()); }
  std::size_t quadrature_points() const noexcept { return nodes_.size(); }
  const std::vector<Complex>& nodes() const noexcept { return nodes_; }

  /// e_k(z), 0 <= k < dim().
  Complex basis_eval(Eigen::Index k, Complex z) const {
    if (k < 0 || k >= dim()) throw DomainError("basis index out of range");
    if (std::abs(z) > 1.0 + 1e-12) throw DomainError("evaluation point outside the closed disk");
    const Complex ak = order_[static_cast<std::size_t>(k)];
    Complex v = std::sqrt(1.0 - std::norm(ak)) / (1.0 - std::conj(ak) * z);
    for (Eigen::Index j = 0; j < k; ++j) {
      const Complex a = order_[static_cast<std::size_t>(j)];
      v *= (z - a) / (1.0 - std::conj(a) * z);
    }
    return v;
  }

  /// Column k holds e_k on the quadrature nodes.
  const Matrix& basis_on_nodes() const noexcept { return basis_values_; }

  Vector sample(const Function& f) const {
    Vector v(static_cast<Eigen::Index>(nodes_.size()));
    for (std::size_t j = 0; j < nodes_.size(); ++j) v(static_cast<Eigen::Index>(j)) = f(nodes_[j]);
    return v;
  }

  /// (1/N) sum f(z_j) conj(g(z_j)) over the nodes.
  Complex inner_product(const Vector& f, const Vector& g) const {
    if (f.size() != static_cast<Eigen::Index>(nodes_.size()) || g.size() != f.size()) {
      throw DimensionMismatchError("samples must match the quadrature grid");
    }
    return g.dot(f) / static_cast<double>(nodes_.size());
  }

  Complex inner_product(const Function& f, const Function& g) const { return inner_product(sample(f), sample(g)); }

  /// Coordinates <f, e_k> of a sampled function.
  Vector coordinates(const Vector& f) const {
    return basis_values_.adjoint() * f / static_cast<double>(nodes_.size());
  }

  /// phi H^2 ⊖ theta H^2 = phi * H(theta/phi) as a coordinate subspace.
  Subspace divisor_subspace(const BlaschkeProduct& phi, const Tolerances& tol = {}) const {
    if (!divides(phi, theta_)) throw NonDivisorError("phi does not divide theta");
    const BlaschkeProduct psi = divide(theta_, phi).with_constant(1.0);
    if (psi.degree() == 0) return Subspace::zero(dim());
    const ModelSpace inner(psi);
    const BlaschkeProduct phi1 = phi.with_constant(1.0);
    Matrix coords(dim(), inner.dim());
    for (Eigen::Index k = 0; k < inner.dim(); ++k) {
      const Vector f = sample([&](Complex z) { return evaluate(phi1, z) * inner.basis_eval(k, z); });
      coords.col(k) = coordinates(f);
    }
    return Subspace::span(coords, tol.rank);
  }

 private:
  BlaschkeProduct theta_;
  std::vector<Complex> order_;
  std::vector<Complex> nodes_;
  Matrix basis_values_;
};

inline Complex basis_eval(const ModelSpace& space, Eigen::Index k, Complex z) { return space.basis_eval(k, z); }

/// S(theta) in the Takenaka–Malmquist basis.
struct ModelOperator {
  BlaschkeProduct theta;
  Matrix matrix;
};

/// M[j][k] = <z e_k, e_j>; lower triangular with the zeros on the diagonal.
inline ModelOperator compressed_shift(const ModelSpace& space) {
  const Eigen::Index d = space.dim();
  const Matrix& e = space.basis_on_nodes();
  Matrix shifted = e;
  for (std::size_t j = 0; j < space.nodes().size(); ++j) shifted.row(static_cast<Eigen::Index>(j)) *= space.nodes()[j];
  Matrix m(d, d);
  for (Eigen::Index k = 0; k < d; ++k) m.col(k) = space.coordinates(shifted.col(k));
  return {space.theta(), m};
}

inline ModelOperator compressed_shift(const BlaschkeProduct& theta) {
  if (theta.degree() == 0) throw DomainError("compressed shift needs a nonconstant theta");
  return compressed_shift(ModelSpace(theta));
}

inline Subspace divisor_subspace(const BlaschkeProduct& theta, const BlaschkeProduct& phi, const Tolerances& tol = {}) {
  return ModelSpace(theta).divisor_subspace(phi, tol);
}

struct LatticeEntry {
  BlaschkeProduct divisor;
  Subspace subspace;
};

/// One invariant subspace of S(theta) per inner divisor of theta.
inline std::vector<LatticeEntry> enumerate_lattice(const BlaschkeProduct& theta, std::size_t cap = 4096,
                                                   const Tolerances& tol = {}) {
  if (theta.degree() == 0) throw DomainError("lattice of a constant theta is trivial");
  const std::vector<BlaschkeProduct> divs = divisors(theta, cap);
  const ModelSpace space(theta);
  std::vector<LatticeEntry> out;
  out.reserve(divs.size());
  for (const auto& phi : divs) out.push_back({phi, space.divisor_subspace(phi, tol)});
  return out;
}

}  // namespace c0lat
