#include <gtest/gtest.h>

#include <cmath>

#include "c0lat/calculus.hpp"
#include "c0lat/modelspace.hpp"
#include "c0lat/sampling.hpp"

using namespace c0lat;

namespace {

// Closed form of <z e_k, e_j> for the Takenaka–Malmquist basis built on the
// zero order a_0, ..., a_{d-1}.
Matrix shift_oracle(const std::vector<Complex>& a) {
  const auto d = static_cast<Eigen::Index>(a.size());
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    m(i, i) = a[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < i; ++j) {
      Complex v = std::sqrt(1.0 - std::norm(a[static_cast<std::size_t>(i)])) *
                  std::sqrt(1.0 - std::norm(a[static_cast<std::size_t>(j)]));
      for (Eigen::Index k = j + 1; k < i; ++k) v *= -std::conj(a[static_cast<std::size_t>(k)]);
      m(i, j) = v;
    }
  }
  return m;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(CompressedShift, NilpotentExample) {
  const Matrix s = compressed_shift(BlaschkeProduct::monomial(2)).matrix;
  Matrix want(2, 2);
  want << 0.0, 0.0, 1.0, 0.0;
  EXPECT_LT(max_abs(s - want), 1e-14);
}

TEST(CompressedShift, SingleZeroIsScalar) {
  const Matrix s = compressed_shift(BlaschkeProduct::factor(Complex(0.3, 0.4))).matrix;
  ASSERT_EQ(s.rows(), 1);
  EXPECT_NEAR(std::abs(s(0, 0) - Complex(0.3, 0.4)), 0.0, 1e-14);
}

TEST(CompressedShift, MatchesClosedForm) {
  sampling::Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const BlaschkeProduct theta = sampling::random_blaschke(rng);
    const ModelOperator op = compressed_shift(theta);
    EXPECT_LT(max_abs(op.matrix - shift_oracle(theta.zero_list())), 1e-11) << to_string(theta);
    EXPECT_LE(linalg::op_norm(op.matrix), 1.0 + 1e-9);
  }
}

TEST(CompressedShift, HighMultiplicityNearBoundary) {
  const BlaschkeProduct theta = BlaschkeProduct::factor(Complex(0.0, 0.95), 6);
  const ModelOperator op = compressed_shift(theta);
  EXPECT_LT(max_abs(op.matrix - shift_oracle(theta.zero_list())), 1e-10);
  EXPECT_LT(linalg::op_norm(apply_blaschke(op.matrix, theta)), 1e-7);
}

TEST(CompressedShift, ConstantThetaRejected) {
  EXPECT_THROW(compressed_shift(BlaschkeProduct()), DomainError);
}

TEST(ModelSpace, BasisIsOrthonormalUnderQuadrature) {
  const BlaschkeProduct theta = BlaschkeProduct::from_zeros({0.0, Complex(0.6, 0.2), Complex(0.6, 0.2), -0.8});
  const ModelSpace space(theta);
  const Matrix& e = space.basis_on_nodes();
  const Matrix gram = e.adjoint() * e / static_cast<double>(space.quadrature_points());
  EXPECT_LT(max_abs(gram - Matrix::Identity(4, 4)), 1e-12);
}

TEST(ModelSpace, ReproducingKernelCoordinates) {
  // <k_w, e_j> = conj(e_j(w)) with k_w(z) = (1 - conj(theta(w)) theta(z)) / (1 - conj(w) z)
  const BlaschkeProduct theta = BlaschkeProduct::from_zeros({Complex(0.1, 0.5), 0.3, 0.3, Complex(-0.4, -0.4)});
  const ModelSpace space(theta);
  const Complex w(0.2, -0.35);
  const Complex tw = evaluate(theta, w);
  const Vector samples = space.sample([&](Complex z) { return (1.0 - std::conj(tw) * evaluate(theta, z)) / (1.0 - std::conj(w) * z); });
  const Vector coords = space.coordinates(samples);
  for (Eigen::Index j = 0; j < space.dim(); ++j) {
    EXPECT_NEAR(std::abs(coords(j) - std::conj(space.basis_eval(j, w))), 0.0, 1e-12);
  }
}

TEST(ModelSpace, CustomZeroOrder) {
  const BlaschkeProduct theta = BlaschkeProduct::from_zeros({0.5, -0.5, Complex(0.0, 0.3)});
  const ModelSpace space(theta, std::vector<Complex>{Complex(0.0, 0.3), 0.5, -0.5});
  const Matrix s = compressed_shift(space).matrix;
  EXPECT_LT(max_abs(s - shift_oracle(space.zero_order())), 1e-12);
  EXPECT_THROW(ModelSpace(theta, std::vector<Complex>{0.5, 0.5, -0.5}), PreconditionError);
}

TEST(ModelSpace, BasisEvalValidates) {
  const ModelSpace space(BlaschkeProduct::monomial(2));
  EXPECT_THROW(space.basis_eval(2, 0.0), DomainError);
  EXPECT_THROW(space.basis_eval(0, Complex(1.5)), DomainError);
  EXPECT_EQ(space.basis_eval(1, Complex(0.5)), Complex(0.5));
}

TEST(QuadratureSize, PowerOfTwoGrowingWithRadius) {
  const std::size_t small = quadrature_size(BlaschkeProduct::factor(0.1));
  const std::size_t large = quadrature_size(BlaschkeProduct::factor(0.97, 4));
  EXPECT_EQ(small, 64u);
  EXPECT_GT(large, small);
  EXPECT_EQ(large & (large - 1), 0u);
}

TEST(DivisorSubspace, DimensionsAndInvariance) {
  sampling::Rng rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    sampling::BlaschkeOptions opt;
    opt.max_degree = 5;
    const BlaschkeProduct theta = sampling::random_blaschke(rng, opt);
    const ModelSpace space(theta);
    const Matrix s = compressed_shift(space).matrix;
    for (const auto& phi : divisors(theta)) {
      const Subspace m = space.divisor_subspace(phi);
      EXPECT_EQ(static_cast<std::size_t>(m.dim()), theta.degree() - phi.degree());
      EXPECT_TRUE(is_invariant(s, m).invariant);
      // (theta/phi)(S) vanishes on phi H(theta/phi)
      const Matrix restricted = apply_blaschke(s, divide(theta, phi)) * m.basis();
      EXPECT_LT(restricted.size() ? restricted.norm() : 0.0, 1e-8);
    }
  }
}

TEST(DivisorSubspace, Extremes) {
  const BlaschkeProduct theta = BlaschkeProduct::from_zeros({0.0, 0.5});
  const ModelSpace space(theta);
  EXPECT_EQ(space.divisor_subspace(BlaschkeProduct()).dim(), 2);
  EXPECT_EQ(space.divisor_subspace(theta).dim(), 0);
  EXPECT_THROW(space.divisor_subspace(BlaschkeProduct::factor(0.25)), NonDivisorError);
}

TEST(DivisorSubspace, MonomialExample) {
  // z H(z) inside H(z^2) is spanned by e_1 = z
  const Subspace m = divisor_subspace(BlaschkeProduct::monomial(2), BlaschkeProduct::monomial(1));
  Matrix e1 = Matrix::Zero(2, 1);
  e1(1, 0) = 1.0;
  EXPECT_TRUE(equals(m, Subspace::from_orthonormal(e1)));
}

TEST(EnumerateLattice, OneSubspacePerDivisor) {
  const BlaschkeProduct theta = BlaschkeProduct::from_zeros({0.0, 0.0, 0.5});
  const auto lat = enumerate_lattice(theta);
  ASSERT_EQ(lat.size(), 6u);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    for (std::size_t j = 0; j < lat.size(); ++j) {
      EXPECT_EQ(equals(lat[i].subspace, lat[j].subspace), i == j);
      EXPECT_EQ(contains(lat[i].subspace, lat[j].subspace), divides(lat[i].divisor, lat[j].divisor));
    }
  }
  EXPECT_THROW(enumerate_lattice(BlaschkeProduct()), DomainError);
}

TEST(EnumerateLattice, MeetJoinAreLcmGcd) {
  sampling::Rng rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    sampling::BlaschkeOptions opt;
    opt.max_degree = 5;
    const BlaschkeProduct theta = sampling::random_blaschke(rng, opt);
    const ModelSpace space(theta);
    const auto divs = divisors(theta);
    for (const auto& p : divs) {
      for (const auto& q : divs) {
        const Subspace a = space.divisor_subspace(p);
        const Subspace b = space.divisor_subspace(q);
        EXPECT_LE(distance(meet(a, b), space.divisor_subspace(lcm(p, q))), 1e-7);
        EXPECT_LE(distance(join(a, b), space.divisor_subspace(gcd(p, q))), 1e-7);
      }
    }
  }
}
