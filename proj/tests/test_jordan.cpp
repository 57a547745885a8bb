#include <gtest/gtest.h>

#include <cmath>

#include "c0lat/jordan.hpp"
#include "c0lat/sampling.hpp"
#include "c0lat/verifiers.hpp"

using namespace c0lat;

namespace {

Matrix diag(std::initializer_list<Complex> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (Complex v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

Matrix nilpotent2() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Subspace axis(Eigen::Index n, Eigen::Index i) {
  Matrix e = Matrix::Zero(n, 1);
  e(i, 0) = 1.0;
  return Subspace::from_orthonormal(e);
}

// Distance of X from the span of an orthonormal (Frobenius) family.
double span_residual(const std::vector<Matrix>& basis, const Matrix& x) {
  Matrix r = x;
  for (const auto& b : basis) r -= (b.array().conjugate() * x.array()).sum() * b;
  return r.norm() / x.norm();
}

}  // namespace

TEST(JordanModelType, ChainTrimAndDimension) {
  const BlaschkeProduct a = BlaschkeProduct::from_zeros({0.0, 0.0, 0.5});
  const BlaschkeProduct b = BlaschkeProduct::from_zeros({0.0});
  const JordanModel m({a, b, BlaschkeProduct(), BlaschkeProduct()});
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.dimension(), 4u);
  EXPECT_EQ(jordan_operator(m).rows(), 4);
  EXPECT_THROW(JordanModel({b, a}), PreconditionError);
  EXPECT_THROW(JordanModel({a, BlaschkeProduct(), b}), PreconditionError);
  EXPECT_TRUE(models_equiv(m, JordanModel({a.with_constant(-1.0), b})));
  EXPECT_FALSE(models_equiv(m, JordanModel({a})));
}

TEST(Intertwiners, ZeroOperatorHasFullSpace) {
  const IntertwinerSpace s = intertwiner_space(Matrix::Zero(2, 2), Matrix::Zero(2, 2));
  EXPECT_EQ(s.basis.size(), 4u);
  EXPECT_EQ(s.max_rank, 2);
}

TEST(Intertwiners, DisjointSpectraGiveZero) {
  const IntertwinerSpace s = intertwiner_space(diag({0.3}), diag({0.7}));
  EXPECT_TRUE(s.basis.empty());
  EXPECT_EQ(s.max_rank, 0);
}

TEST(Intertwiners, DiagonalCountsMatchingEigenvalues) {
  // X T1 = T2 X with diagonal T1, T2 forces x_ij = 0 unless t2_i = t1_j
  const Matrix t1 = diag({0.1, 0.2, 0.2, -0.4});
  const Matrix t2 = diag({0.2, 0.5, 0.1});
  const IntertwinerSpace s = intertwiner_space(t1, t2);
  EXPECT_EQ(s.basis.size(), 3u);
  EXPECT_EQ(s.max_rank, 2);
  EXPECT_LT(s.max_residual, 1e-12);
}

TEST(Intertwiners, SimilarityIsInTheSpace) {
  sampling::Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix t = sampling::random_contraction(rng, 6, 0.9);
    const Matrix q = sampling::random_conditioned(rng, t.rows(), 3.0);
    const Matrix t2 = q * t * q.inverse();
    const IntertwinerSpace s = intertwiner_space(t, t2, 1);
    EXPECT_EQ(s.max_rank, t.rows());
    EXPECT_LT(span_residual(s.basis, q), 1e-8);
    for (const auto& x : s.basis) EXPECT_LT(intertwining_residual(x, t, t2), 1e-9);
  }
}

TEST(Intertwiners, CommutantContainsIdentityAndT) {
  sampling::Rng rng(4);
  const Matrix t = sampling::random_c0(rng).matrix;
  const IntertwinerSpace s = intertwiner_space(t, t);
  const Eigen::Index n = t.rows();
  EXPECT_LT(span_residual(s.basis, Matrix::Identity(n, n)), 1e-8);
  EXPECT_LT(span_residual(s.basis, t), 1e-8);
  EXPECT_THROW(intertwiner_space(Matrix::Zero(17, 17), t), CapExceededError);
}

TEST(Quasiaffinity, IdentityForEqualOperators) {
  const Matrix t = nilpotent2();
  const auto x = find_quasiaffinity(t, t);
  ASSERT_TRUE(x.has_value());
  EXPECT_LT((*x - Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(Quasiaffinity, NoneBetweenDifferentJordanTypes) {
  EXPECT_FALSE(find_quasiaffinity(Matrix::Zero(2, 2), nilpotent2()).has_value());
  EXPECT_FALSE(find_quasiaffinity(nilpotent2(), Matrix::Zero(2, 2)).has_value());
  EXPECT_FALSE(are_quasisimilar(Matrix::Zero(2, 2), nilpotent2()));
  EXPECT_FALSE(are_quasisimilar(compressed_shift(BlaschkeProduct::monomial(1)).matrix,
                                compressed_shift(BlaschkeProduct::monomial(2)).matrix));
}

TEST(Quasiaffinity, EquivalentModelFunctionsAreQuasisimilar) {
  const BlaschkeProduct theta = BlaschkeProduct::from_zeros({0.5, -0.5, Complex(0.0, 0.3), 0.5});
  const Matrix a = compressed_shift(ModelSpace(theta)).matrix;
  const Matrix b = compressed_shift(ModelSpace(theta.with_constant(Complex(0.0, 1.0)),
                                               std::vector<Complex>{Complex(0.0, 0.3), 0.5, -0.5, 0.5}))
                       .matrix;
  const auto cert = quasisimilarity_certificate(a, b);
  ASSERT_TRUE(cert.has_value());
  EXPECT_LT(cert->forward_residual, 1e-9);
  EXPECT_LT(cert->backward_residual, 1e-9);
}

TEST(Quasiaffinity, SimilarMatricesAreQuasisimilar) {
  sampling::Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rc = sampling::random_c0(rng);
    const Matrix q = sampling::random_conditioned(rng, rc.matrix.rows(), 4.0);
    const Matrix t2 = q * rc.matrix * q.inverse();
    const auto x = find_quasiaffinity(rc.matrix, t2, 2);
    ASSERT_TRUE(x.has_value());
    EXPECT_LT(intertwining_residual(*x, rc.matrix, t2), 1e-9 * intertwining_scale(rc.matrix, t2));
    EXPECT_EQ(linalg::numerical_rank(*x, 1e-10), rc.matrix.rows());
    EXPECT_NEAR(linalg::op_norm(*x), 1.0, 1e-12);
  }
}

TEST(LatticeMaps, ImageAndPreimageExamples) {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 0) = 1.0;
  EXPECT_EQ(lattice_map(x, axis(2, 1)).dim(), 0);
  EXPECT_TRUE(equals(lattice_map(x, Subspace::full(2)), axis(2, 0)));
  EXPECT_TRUE(equals(lattice_preimage(x, Subspace::zero(2)), axis(2, 1)));
  EXPECT_TRUE(equals(lattice_preimage(x, axis(2, 1)), axis(2, 1)));
  EXPECT_EQ(lattice_preimage(x, Subspace::full(2)).dim(), 2);
  EXPECT_EQ(lattice_preimage(Matrix::Zero(2, 3), axis(2, 0)).dim(), 3);
  EXPECT_THROW(lattice_map(x, Subspace::full(3)), DimensionMismatchError);
}

TEST(LatticeMaps, InvertibleMapRoundTrips) {
  sampling::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = sampling::random_conditioned(rng, 5, 5.0);
    const Subspace n = Subspace::span(sampling::gaussian_matrix(rng, 5, sampling::uniform_int(rng, 0, 5)));
    EXPECT_TRUE(equals(lattice_map(x, lattice_preimage(x, n)), n));
    EXPECT_TRUE(equals(lattice_preimage(x, lattice_map(x, n)), n));
  }
}

TEST(JordanModelOf, Examples) {
  const JordanModel zero = jordan_model(Matrix::Zero(2, 2));
  ASSERT_EQ(zero.size(), 2u);
  EXPECT_TRUE(equiv(zero.thetas()[0], BlaschkeProduct::monomial(1)));
  EXPECT_TRUE(equiv(zero.thetas()[1], BlaschkeProduct::monomial(1)));

  const JordanModel nil = jordan_model(nilpotent2());
  ASSERT_EQ(nil.size(), 1u);
  EXPECT_TRUE(equiv(nil.thetas()[0], BlaschkeProduct::monomial(2)));

  const JordanModel half = jordan_model(diag({0.5, 0.5}));
  ASSERT_EQ(half.size(), 2u);
  EXPECT_TRUE(equiv_within(half.thetas()[1], BlaschkeProduct::factor(0.5), 1e-12));

  EXPECT_TRUE(jordan_model(Matrix::Zero(0, 0)).empty());
  EXPECT_THROW(jordan_model(diag({2.0})), NotC0Error);
  EXPECT_THROW(jordan_model(Matrix::Zero(13, 13)), CapExceededError);
}

TEST(JordanModelOf, RecoversRandomModels) {
  sampling::Rng rng(10);
  for (int trial = 0; trial < 15; ++trial) {
    const auto rc = sampling::random_c0(rng);
    const JordanModelResult r = jordan_model_certified(rc.matrix, 3);
    EXPECT_TRUE(models_equiv(r.model, rc.model, 1e-6));
    EXPECT_EQ(r.model.dimension(), static_cast<std::size_t>(rc.matrix.rows()));
    EXPECT_LT(r.certificate.forward_residual, 1e-7);
    EXPECT_LT(r.certificate.backward_residual, 1e-7);
    for (std::size_t j = 0; j + 1 < r.model.size(); ++j) {
      EXPECT_TRUE(divides(r.model.thetas()[j + 1], r.model.thetas()[j]));
    }
    EXPECT_TRUE(equiv(r.model.thetas().front(), r.minimal_function));
  }
}

TEST(PropertyP, FiniteModelsHaveIt) {
  const PropertyPResult r = has_property_P(JordanModel({BlaschkeProduct::monomial(2), BlaschkeProduct::monomial(1)}));
  EXPECT_TRUE(r.holds);
  EXPECT_NE(r.reasoning.find("gcd"), std::string::npos);
  EXPECT_TRUE(has_property_P(JordanModel()).holds);
}

TEST(Triangularization, NilpotentShift) {
  const Matrix s = compressed_shift(BlaschkeProduct::monomial(2)).matrix;
  const TriangularizationReport r = triangularization_check(s, axis(2, 1));
  EXPECT_LT(r.lower_left_residual, 1e-14);
  EXPECT_NEAR(std::abs(r.top(0, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r.bottom(0, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r.coupling(0, 0)), 1.0, 1e-14);
  EXPECT_TRUE(r.whole.is_c0);
  EXPECT_TRUE(r.consistent);
  EXPECT_THROW(triangularization_check(s, axis(2, 0)), PreconditionError);
}

TEST(Triangularization, NonC0BlockPropagates) {
  const TriangularizationReport r = triangularization_check(diag({0.5, 1.0}), axis(2, 0));
  EXPECT_FALSE(r.whole.is_c0);
  EXPECT_TRUE(r.top_cert.is_c0);
  EXPECT_FALSE(r.bottom_cert.is_c0);
  EXPECT_TRUE(r.consistent);
}

TEST(Triangularization, RandomInvariantSubspaces) {
  sampling::Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rc = sampling::random_c0(rng);
    const sampling::InvariantSampler sampler(rc.matrix);
    const TriangularizationReport r = triangularization_check(rc.matrix, sampler.draw(rng));
    EXPECT_TRUE(r.consistent);
    EXPECT_TRUE(r.whole.is_c0);
  }
}

TEST(BruteForceLat, Counts) {
  EXPECT_EQ(brute_force_lat(diag({0.3})).size(), 2u);
  const auto lat = brute_force_lat(diag({0.1, 0.2}));
  ASSERT_EQ(lat.size(), 4u);
  EXPECT_EQ(lat[0].dim(), 0);
  EXPECT_TRUE(equals(lat[1], axis(2, 0)));
  EXPECT_TRUE(equals(lat[2], axis(2, 1)));
  EXPECT_EQ(lat[3].dim(), 2);
  EXPECT_THROW(brute_force_lat(diag({0.2, 0.2})), PreconditionError);
  EXPECT_THROW(brute_force_lat(diag({1.5})), DomainError);
}

TEST(BruteForceLat, MatchesDivisorLattice) {
  const BlaschkeProduct theta = BlaschkeProduct::from_zeros({0.4, Complex(-0.3, 0.5), Complex(0.1, -0.6)});
  const ModelSpace space(theta);
  const Matrix s = compressed_shift(space).matrix;
  const auto oracle = brute_force_lat(s);
  const auto lat = enumerate_lattice(theta);
  ASSERT_EQ(oracle.size(), lat.size());
  for (const auto& o : oracle) {
    int hits = 0;
    for (const auto& e : lat) hits += equals(o, e.subspace) ? 1 : 0;
    EXPECT_EQ(hits, 1);
  }
}

TEST(LatticeIsomorphism, IdentityIsBijective) {
  sampling::Rng rng(14);
  const Matrix t = sampling::random_c0(rng).matrix;
  const Eigen::Index n = t.rows();
  const LatticeMapReport r = check_lattice_isomorphism(Matrix::Identity(n, n), t, t, 10, 5);
  EXPECT_EQ(r.surjective_evidence, 1.0);
  EXPECT_EQ(r.injective_evidence, 1.0);
  EXPECT_EQ(r.dual_surjective_evidence, 1.0);
  EXPECT_EQ(r.dual_injective_evidence, 1.0);
  EXPECT_TRUE(r.duality_consistent);
}

TEST(LatticeIsomorphism, ZeroMapIsNotOnto) {
  const Matrix t = diag({0.1, 0.2, 0.3});
  const LatticeMapReport r = check_lattice_isomorphism(Matrix::Zero(3, 3), t, t, 10, 5);
  EXPECT_LT(r.surjective_evidence, 1.0);
  EXPECT_LT(r.injective_evidence, 1.0);
  EXPECT_TRUE(r.duality_consistent);
}

TEST(LatticeIsomorphism, RejectsNonIntertwiner) {
  const Matrix t1 = diag({0.1, 0.2});
  Matrix x = Matrix::Identity(2, 2);
  x(0, 1) = 1.0;
  EXPECT_THROW(check_lattice_isomorphism(x, t1, t1, 5), PreconditionError);
}

TEST(ModularVerifier, ModelOperatorPasses) {
  const Matrix s = compressed_shift(BlaschkeProduct::from_zeros({0.0, 0.0, 0.5, Complex(0.2, -0.4), -0.6})).matrix;
  const VerificationReport r = theorem97_verifier(s, 30, 17);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.trials, 30u);
  EXPECT_LE(r.metric("preimage_identity"), 1e-7);
  EXPECT_LE(r.metric("sum_map_intertwining"), 1e-8);
}

TEST(ModularVerifier, ZeroMatrixPasses) {
  const VerificationReport r = theorem97_verifier(Matrix::Zero(3, 3), 30, 2);
  EXPECT_TRUE(r.passed);
  EXPECT_THROW(theorem97_verifier(diag({2.0}), 1), NotC0Error);
  EXPECT_THROW(theorem97_verifier(Matrix::Zero(11, 11), 1), CapExceededError);
}

TEST(TransferVerifier, SimilarityPasses) {
  sampling::Rng rng(16);
  const auto rc = sampling::random_c0(rng);
  const Matrix q = sampling::random_conditioned(rng, rc.matrix.rows(), 3.0);
  const Matrix t2 = q * rc.matrix * q.inverse();
  const VerificationReport r = theorem_x3_verifier(rc.matrix, t2, q, 20, 4);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.suite, "x3-transfer");
  EXPECT_THROW(theorem_x3_verifier(rc.matrix, rc.matrix, Matrix::Zero(rc.matrix.rows(), rc.matrix.rows()), 1),
               PreconditionError);
}
