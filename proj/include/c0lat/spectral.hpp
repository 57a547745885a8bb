#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "c0lat/error.hpp"
#include "c0lat/linalg.hpp"

namespace c0lat {

/// One eigenvalue cluster with its Jordan block sizes, largest first.
struct EigenCluster {
  Complex center;
  int algebraic_multiplicity = 0;
  std::vector<int> block_sizes;

  int largest_block() const { return block_sizes.empty() ? 0 : block_sizes.front(); }
  int block_count() const { return static_cast<int>(block_sizes.size()); }
};

using JordanStructure = std::vector<EigenCluster>;

namespace spectral {

// Eigensolvers split a defective eigenvalue of index k by about eps^(1/k).
// Radii run from widest to narrowest; the coarsest clustering that verifies wins.
inline constexpr std::array<double, 7> kClusterRadii = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
inline constexpr std::array<double, 5> kRankTolerances = {1e-10, 1e-11, 1e-12, 1e-9, 1e-8};

/// Removes rounding noise from real/imaginary parts so that exact values such
/// as 0 or 0.5 are recovered when the eigensolver hits them to the last bits.
inline Complex snap(Complex c, double scale) {
  const double eps = 1e-14 * std::max(1.0, scale);
  double re = std::abs(c.real()) <= eps ? 0.0 : c.real();
  double im = std::abs(c.imag()) <= eps ? 0.0 : c.imag();
  return {re, im};
}

/// Single-linkage clustering; each cluster is represented by its mean,
/// which is far more accurate than the individual split eigenvalues.
inline std::vector<std::pair<Complex, int>> cluster(const std::vector<Complex>& eigs, double radius) {
  const std::size_t n = eigs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(eigs[i] - eigs[j]) <= radius) parent[find(i)] = find(j);
    }
  }
  std::vector<std::pair<Complex, int>> out;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      out.emplace_back(eigs[i], 1);
    } else {
      auto& slot = out[static_cast<std::size_t>(it - roots.begin())];
      slot.first += eigs[i];
      slot.second += 1;
    }
  }
  double scale = 0.0;
  for (Complex e : eigs) scale = std::max(scale, std::abs(e));
  for (auto& [center, count] : out) center = snap(center / static_cast<double>(count), scale);
  return out;
}

/// Block sizes of one cluster from the nullities of (T - center)^k, ranks cut
/// at rank_tol * max(1, ||T - center||)^k, or
/// nullopt when the nullity sequence is inconsistent with a Jordan form of
/// the given algebraic multiplicity.
inline std::optional<std::vector<int>> block_sizes(const Matrix& t, Complex center, int multiplicity, double rank_tol) {
  const Eigen::Index n = t.rows();
  const Matrix shifted = t - center * Matrix::Identity(n, n);
  const double base = std::max(1.0, linalg::op_norm(shifted));
  Matrix power = Matrix::Identity(n, n);
  std::vector<int> nullity{0};
  double scale = 1.0;
  for (int k = 1; k <= multiplicity; ++k) {
    power = power * shifted;
    scale *= base;
    const RealVector sv = linalg::singular_values(power);
    const auto rank = std::count_if(sv.begin(), sv.end(), [&](double v) { return v > rank_tol * scale; });
    const int nu = static_cast<int>(n - rank);
    if (nu < nullity.back() || nu > multiplicity) return std::nullopt;
    nullity.push_back(nu);
    if (nu == multiplicity) break;
  }
  if (nullity.back() != multiplicity) return std::nullopt;
  // at_least[k] = number of blocks of size >= k+1; must be non-increasing
  std::vector<int> at_least;
  for (std::size_t k = 1; k < nullity.size(); ++k) at_least.push_back(nullity[k] - nullity[k - 1]);
  for (std::size_t k = 1; k < at_least.size(); ++k) {
    if (at_least[k] > at_least[k - 1]) return std::nullopt;
  }
  if (at_least.empty() || at_least.front() == 0) return std::nullopt;
  std::vector<int> sizes;
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    const int exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
    for (int j = 0; j < exactly; ++j) sizes.push_back(static_cast<int>(k + 1));
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

/// Jordan structure of t for one clustering radius and rank tolerance.
inline std::optional<JordanStructure> structure_at(const Matrix& t, const std::vector<Complex>& eigs, double radius,
                                                   double rank_tol) {
  JordanStructure out;
  for (const auto& [center, count] : cluster(eigs, radius)) {
    auto sizes = block_sizes(t, center, count, rank_tol);
    if (!sizes) return std::nullopt;
    out.push_back({center, count, std::move(*sizes)});
  }
  return out;
}

/// Searches clustering radii (widest first) and rank tolerances for the
/// first consistent Jordan structure that `accept` confirms.
inline JordanStructure resolve_jordan_structure(const Matrix& t,
                                                const std::function<bool(const JordanStructure&)>& accept) {
  if (t.rows() == 0) return {};
  const std::vector<Complex> eigs = linalg::eigenvalues(t);
  for (double radius : kClusterRadii) {
    for (double rank_tol : kRankTolerances) {
      auto s = structure_at(t, eigs, radius, rank_tol);
      if (s && accept(*s)) return *s;
    }
  }
  throw VerificationFailure("could not resolve a verified Jordan structure");
}

/// Minimal-polynomial acceptance for matrices that need not be contractions:
/// prod (T - c)^k annihilates T relative to prod (1 + ||T|| + |c|)^k, and
/// dropping any single factor leaves a norm above 1e-6.
inline bool minimal_polynomial_verifies(const Matrix& t, const JordanStructure& s) {
  const Eigen::Index n = t.rows();
  const double tn = linalg::op_norm(t);
  auto evaluate = [&](std::size_t skip, double& scale) {
    Matrix p = Matrix::Identity(n, n);
    scale = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const int k = s[i].largest_block() - (i == skip ? 1 : 0);
      const Matrix shifted = t - s[i].center * Matrix::Identity(n, n);
      for (int j = 0; j < k; ++j) p = p * shifted;
      scale *= std::pow(1.0 + tn + std::abs(s[i].center), k);
    }
    return linalg::op_norm(p);
  };
  double scale = 1.0;
  if (evaluate(s.size(), scale) > 1e-9 * scale) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (evaluate(i, scale) <= 1e-6) return false;
  }
  return true;
}

inline JordanStructure jordan_structure(const Matrix& t) {
  return resolve_jordan_structure(t, [&](const JordanStructure& s) { return minimal_polynomial_verifies(t, s); });
}

/// Geometric multiplicity of the most degenerate eigenvalue.
inline int max_geometric_multiplicity(const Matrix& t) {
  int best = 0;
  for (const auto& c : jordan_structure(t)) best = std::max(best, c.block_count());
  return best;
}

}  // namespace spectral
}  // namespace c0lat
