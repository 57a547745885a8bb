#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "c0lat/calculus.hpp"
#include "c0lat/jordan.hpp"
#include "c0lat/sampling.hpp"

using namespace c0lat;

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Cauchy integral over the unit circle, trapezoidal rule:
// f(T) = mean_k f(z_k) z_k (z_k - T)^{-1}.
Matrix cauchy_oracle(const Matrix& t, const BlaschkeProduct& b, int nodes = 1024) {
  const Eigen::Index n = t.rows();
  Matrix acc = Matrix::Zero(n, n);
  for (int k = 0; k < nodes; ++k) {
    const Complex z = std::polar(1.0, 2 * std::numbers::pi * k / nodes);
    acc += evaluate(b, z) * z * (z * Matrix::Identity(n, n) - t).inverse();
  }
  return acc / static_cast<double>(nodes);
}

Matrix jordan_block(Complex lambda, int size) {
  Matrix j = lambda * Matrix::Identity(size, size);
  for (int i = 0; i + 1 < size; ++i) j(i + 1, i) = 1.0;
  return j;
}

Matrix conjugate(sampling::Rng& rng, const Matrix& j, double kappa) {
  const Matrix q = sampling::random_conditioned(rng, j.rows(), kappa);
  return q * j * q.inverse();
}

}  // namespace

TEST(ApplyPolynomial, HornerMatchesPowers) {
  sampling::Rng rng(3);
  const Matrix t = sampling::gaussian_matrix(rng, 4, 4);
  const std::array<Complex, 3> c = {Complex(1.0, 0.5), Complex(-2.0), Complex(0.0, 3.0)};
  const Matrix want = c[0] * Matrix::Identity(4, 4) + c[1] * t + c[2] * t * t;
  EXPECT_LT(max_abs(apply_polynomial(t, c) - want), 1e-12);
  EXPECT_LT(max_abs(apply_polynomial(t, std::span<const Complex>{})), 1e-300);
}

TEST(ApplyBlaschke, DiagonalMatchesScalarEvaluation) {
  sampling::Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const BlaschkeProduct b = sampling::random_blaschke(rng);
    Matrix t = Matrix::Zero(5, 5);
    for (int i = 0; i < 5; ++i) t(i, i) = sampling::random_disk_point(rng, 0.95);
    const Matrix f = apply_blaschke(t, b);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(std::abs(f(i, i) - evaluate(b, t(i, i))), 0.0, 1e-12);
    EXPECT_LT(max_abs(f - Matrix(f.diagonal().asDiagonal())), 1e-12);
  }
}

TEST(ApplyBlaschke, TwoByTwoDividedDifference) {
  const Complex l(0.3, 0.1), m(-0.4, 0.2);
  Matrix t(2, 2);
  t << l, 0.0, 1.0, m;
  const BlaschkeProduct b = BlaschkeProduct::from_zeros({0.5, Complex(0.1, -0.6), 0.0});
  const Matrix f = apply_blaschke(t, b);
  EXPECT_NEAR(std::abs(f(0, 0) - evaluate(b, l)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(f(1, 1) - evaluate(b, m)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(f(1, 0) - (evaluate(b, l) - evaluate(b, m)) / (l - m)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(f(0, 1)), 0.0, 1e-13);
}

TEST(ApplyBlaschke, MatchesCauchyIntegral) {
  sampling::Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix t = sampling::random_contraction(rng, 5, 0.7);
    sampling::BlaschkeOptions opt;
    opt.max_radius = 0.7;
    const BlaschkeProduct b = sampling::random_blaschke(rng, opt);
    EXPECT_LT(linalg::op_norm(apply_blaschke(t, b) - cauchy_oracle(t, b)), 1e-9) << to_string(b);
  }
}

TEST(ApplyBlaschke, MultiplicativeAndContractive) {
  sampling::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix t = sampling::random_contraction(rng, 6, 0.9);
    const BlaschkeProduct a = sampling::random_blaschke(rng);
    const BlaschkeProduct b = sampling::random_blaschke(rng);
    const Matrix fa = apply_blaschke(t, a), fb = apply_blaschke(t, b);
    EXPECT_LT(linalg::op_norm(apply_blaschke(t, a * b) - fa * fb), 1e-8);
    EXPECT_LT(linalg::op_norm(fa * fb - fb * fa), 1e-8);
    EXPECT_LE(linalg::op_norm(fa), 1.0 + 1e-8);
  }
}

TEST(ApplyBlaschke, IllConditionedResolventRejected) {
  Matrix t = Matrix::Zero(2, 2);
  t(0, 1) = 1e13;
  EXPECT_THROW(apply_blaschke(t, BlaschkeProduct::factor(0.5)), SingularResolventError);
  EXPECT_NO_THROW(apply_blaschke(t, BlaschkeProduct::monomial(3)));
}

TEST(ApplyBlaschke, SpectrumOnCircleRejected) {
  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = 1.0;
  EXPECT_THROW(apply_blaschke(t, BlaschkeProduct::factor(0.5)), DomainError);
  EXPECT_THROW(apply_blaschke(Matrix::Zero(2, 3), BlaschkeProduct()), DimensionMismatchError);
}

TEST(RadialValidate, ConvergesAndRejectsBadRadii) {
  sampling::Rng rng(9);
  const Matrix t = sampling::random_c0(rng).matrix;
  const BlaschkeProduct b = minimal_function(t);
  const std::array<double, 4> radii = {0.9, 0.99, 0.995, 0.999};
  const auto res = radial_validate(t, b, radii);
  ASSERT_EQ(res.size(), 4u);
  EXPECT_TRUE(radial_residuals_decreasing(res));
  EXPECT_LT(res.back(), 1e-2);
  const std::array<double, 1> one = {1.0};
  const std::array<double, 1> zero = {0.0};
  EXPECT_THROW(radial_validate(t, b, one), DomainError);
  EXPECT_THROW(radial_validate(t, b, zero), DomainError);
}

TEST(RadialResiduals, DecreasingWithSlack) {
  const std::array<double, 3> ok = {1.0, 0.5, 0.54};
  const std::array<double, 3> bad = {1.0, 0.5, 0.6};
  EXPECT_TRUE(radial_residuals_decreasing(ok));
  EXPECT_FALSE(radial_residuals_decreasing(bad));
}

TEST(ContractionMatrix, Validates) {
  EXPECT_THROW(ContractionMatrix(Matrix::Identity(2, 2) * 2.0), DomainError);
  EXPECT_THROW(ContractionMatrix(Matrix::Zero(2, 3)), DimensionMismatchError);
  sampling::Rng rng(1);
  EXPECT_NO_THROW(ContractionMatrix(sampling::random_unitary(rng, 3)));
}

TEST(MinimalFunction, JordanBlocksMatchLargestBlockOracle) {
  struct Case {
    std::vector<std::pair<Complex, std::vector<int>>> blocks;
  };
  const std::vector<Case> cases = {
      {{{0.0, {2}}}},
      {{{0.0, {1, 1}}}},
      {{{Complex(0.3), {3, 1}}, {Complex(0.0, -0.5), {2}}}},
      {{{Complex(-0.6, 0.2), {1}}, {Complex(0.5, 0.5), {2, 2}}, {Complex(0.1), {1, 1, 1}}}},
  };
  sampling::Rng rng(11);
  for (const auto& c : cases) {
    std::vector<Matrix> parts;
    std::vector<BlaschkeProduct::Zero> want;
    for (const auto& [lambda, sizes] : c.blocks) {
      for (int s : sizes) parts.push_back(jordan_block(lambda, s));
      want.push_back({lambda, sizes.front()});
    }
    Matrix t = conjugate(rng, linalg::direct_sum(parts), 2.0);
    const double norm = linalg::op_norm(t);
    double scale = 1.0;
    if (norm > 0.999) scale = 0.999 / norm;
    t *= scale;
    for (auto& z : want) z.point *= scale;
    const MinimalFunctionResult m = minimal_function_certified(t);
    EXPECT_TRUE(equiv_within(m.function, BlaschkeProduct(want, 1.0), 1e-6)) << to_string(m.function);
    EXPECT_LE(m.annihilation_residual, kAnnihilationBound);
    EXPECT_GT(m.min_divisor_norm, kProperDivisorFloor);
  }
}

TEST(MinimalFunction, RandomModelsAnnihilateAndAreMinimal) {
  sampling::Rng rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    const auto rc = sampling::random_c0(rng);
    const MinimalFunctionResult m = minimal_function_certified(rc.matrix);
    EXPECT_TRUE(equiv_within(m.function, rc.model.thetas().front(), 1e-6))
        << to_string(m.function) << " vs " << to_string(rc.model.thetas().front());
    EXPECT_LT(linalg::op_norm(apply_blaschke(rc.matrix, m.function)), 1e-7);
    for (const auto& phi : maximal_proper_divisors(m.function)) {
      EXPECT_GT(linalg::op_norm(apply_blaschke(rc.matrix, phi)), 1e-3);
    }
  }
}

TEST(MinimalFunction, RequiresC0) {
  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = 2.0;
  EXPECT_THROW(minimal_function(t), NotC0Error);
  EXPECT_THROW(minimal_function(Matrix::Identity(2, 2)), NotC0Error);
  EXPECT_TRUE(minimal_function(Matrix::Zero(0, 0)).is_constant());
}

TEST(ClassifyC0, Examples) {
  Matrix big = Matrix::Zero(2, 2);
  big(0, 0) = 2.0;
  big(1, 1) = 0.5;
  const C0Certificate a = classify_c0(big);
  EXPECT_FALSE(a.is_c0);
  EXPECT_NEAR(a.spectral_radius, 2.0, 1e-12);
  EXPECT_FALSE(a.minimal_function.has_value());

  Matrix unitary = Matrix::Zero(2, 2);
  unitary(0, 0) = 1.0;
  unitary(1, 1) = Complex(0.0, 1.0);
  EXPECT_FALSE(classify_c0(unitary).is_c0);

  const C0Certificate c = classify_c0(jordan_block(0.0, 2));
  ASSERT_TRUE(c.is_c0);
  ASSERT_TRUE(c.minimal_function.has_value());
  EXPECT_TRUE(equiv(*c.minimal_function, BlaschkeProduct::monomial(2)));
  EXPECT_LE(c.annihilation_residual, 1e-12);
}
