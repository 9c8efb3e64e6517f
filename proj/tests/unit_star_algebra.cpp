#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "vnqg/qg_builders.hpp"
#include "vnqg/star_algebra.hpp"

using namespace vnqg;
using vnqg::testing::matrix_units;
using vnqg::testing::random_vector;

namespace {

/// Composition of permutations written as one-line strings "231" etc.
std::string compose(const std::string& g, const std::string& h) {
    std::string out(h.size(), '0');
    for (std::size_t x = 0; x < h.size(); ++x)
        out[x] = g[static_cast<std::size_t>(h[x] - '1')];
    return out;
}

Index index_of(const std::vector<std::string>& labels, const std::string& l) {
    return std::find(labels.begin(), labels.end(), l) - labels.begin();
}

}  // namespace

TEST(StarAlgebraMultiply, UnitIsNeutral) {
    StarAlgebra a = function_algebra(groups::cyclic(2)).alg;
    std::mt19937_64 rng(1);
    CVector x = random_vector(2, rng);
    EXPECT_LE((a.multiply(a.unit(), x) - x).norm(), 1e-15);
    EXPECT_LE((a.multiply(x, a.unit()) - x).norm(), 1e-15);
}

TEST(StarAlgebraMultiply, OrthogonalIdempotentsOfFunctionAlgebra) {
    StarAlgebra a = function_algebra(groups::cyclic(2)).alg;
    EXPECT_EQ(a.multiply(a.basis(0), a.basis(1)).norm(), 0.0);
    EXPECT_EQ(a.multiply(a.basis(1), a.basis(1)), a.basis(1));
}

TEST(StarAlgebraMultiply, GroupAlgebraOfS3FollowsPermutationComposition) {
    GroupTable s3 = groups::symmetric(3);
    StarAlgebra a = group_algebra(s3).alg;
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> pick(0, 5);
    for (int trial = 0; trial < 20; ++trial) {
        int g = pick(rng), h = pick(rng);
        std::string gh = compose(s3.labels[static_cast<std::size_t>(g)], s3.labels[static_cast<std::size_t>(h)]);
        EXPECT_EQ(a.multiply(a.basis(g), a.basis(h)), a.basis(index_of(s3.labels, gh)));
    }
}

TEST(StarAlgebraMultiply, DimensionMismatch) {
    StarAlgebra a = function_algebra(groups::cyclic(2)).alg;
    try {
        a.multiply(CVector::Ones(3), a.unit());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
}

TEST(StarAlgebraInvolute, FunctionAlgebraIndicatorsAreSelfAdjoint) {
    StarAlgebra a = function_algebra(groups::cyclic(3)).alg;
    for (Index g = 0; g < 3; ++g) EXPECT_EQ(a.involute(a.basis(g)), a.basis(g));
}

TEST(StarAlgebraInvolute, GroupAlgebraInvertsElements) {
    GroupTable z3 = groups::cyclic(3);
    StarAlgebra a = group_algebra(z3).alg;
    EXPECT_EQ(a.involute(a.basis(1)), a.basis(2));
    EXPECT_EQ(a.involute(a.basis(0)), a.basis(0));
}

TEST(StarAlgebraInvolute, AntimultiplicativeOnRandomElements) {
    StarAlgebra a = kac_paljutkin().alg;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        CVector x = random_vector(8, rng), y = random_vector(8, rng);
        CVector lhs = a.involute(a.multiply(x, y));
        CVector rhs = a.multiply(a.involute(y), a.involute(x));
        EXPECT_LE((lhs - rhs).norm(), 1e-12);
    }
}

TEST(AxiomsCheck, FunctionAlgebraPasses) {
    VerificationReport r = axioms_check(function_algebra(groups::cyclic(2)).alg);
    EXPECT_TRUE(r.all_pass());
    EXPECT_EQ(r.size(), 5u);
}

TEST(AxiomsCheck, PerturbedStructureConstantBreaksAssociativity) {
    StarAlgebra a = group_algebra(groups::symmetric(3)).alg;
    std::vector<CMatrix> lmul = a.lmul();
    lmul[1](2, 3) += 1.0;
    StarAlgebra broken(lmul, a.star(), a.unit(), a.labels());
    VerificationReport r = axioms_check(broken);
    EXPECT_FALSE(r.all_pass("star_algebra.associativity"));
}

TEST(AxiomsCheck, IdentityInvolutionOnGroupAlgebraIsFlagged) {
    StarAlgebra a = group_algebra(groups::cyclic(3)).alg;
    StarAlgebra broken(a.lmul(), identity(3), a.unit(), a.labels());
    VerificationReport r = axioms_check(broken);
    // u_g* = u_g is still involutive and antimultiplicative on an abelian
    // group; what breaks is positivity of x*x.
    EXPECT_TRUE(r.all_pass("star_algebra.antimultiplicative"));
    EXPECT_TRUE(r.all_pass("star_algebra.involutive"));
    EXPECT_FALSE(r.all_pass("star_algebra.positive_involution"));
    EXPECT_FALSE(r.all_pass());
}

TEST(Gram, TrivialAlgebra) {
    FiniteQuantumGroup t = function_algebra(groups::trivial());
    CMatrix g = gram(t.alg, Functional{CVector::Ones(1)});
    EXPECT_EQ(g, CMatrix::Ones(1, 1));
}

TEST(Gram, HaarOfZ2IsHalfIdentity) {
    FiniteQuantumGroup q = function_algebra(groups::cyclic(2));
    EXPECT_LE((gram(q.alg, q.phi) - 0.5 * identity(2)).norm(), 1e-14);
}

TEST(Gram, TraceWithDensityOnM2IsPositive) {
    StarAlgebra m2 = algebra_from_operators(matrix_units(2));
    std::mt19937_64 rng(4);
    CMatrix y = vnqg::testing::random_matrix(2, 2, rng);
    CMatrix rho = y.adjoint() * y;
    CVector w(4);
    auto units = matrix_units(2);
    for (Index k = 0; k < 4; ++k) w(k) = (rho * units[static_cast<std::size_t>(k)]).trace();
    CMatrix g = gram(m2, Functional{w});
    EXPECT_TRUE(is_positive_semidefinite(g));
    EXPECT_LE(hermiticity_defect(m2, Functional{w}), 1e-14);
}

TEST(Gram, HermitianExactlyForHermitianFunctionals) {
    StarAlgebra a = group_algebra(groups::symmetric(3)).alg;
    std::mt19937_64 rng(5);
    CVector w = random_vector(6, rng);
    Functional f{w};
    EXPECT_GT(hermiticity_defect(a, f), 1e-3);
    EXPECT_GT((gram(a, f) - gram(a, f).adjoint()).norm(), 1e-3);
    // ω(x) + conj ω(x*) is hermitian.
    CVector h(6);
    for (Index k = 0; k < 6; ++k) h(k) = w(k) + std::conj(f(a.involute(a.basis(k))));
    EXPECT_LE(hermiticity_defect(a, Functional{h}), 1e-14);
    EXPECT_LE((gram(a, Functional{h}) - gram(a, Functional{h}).adjoint()).norm(), 1e-14);
}

TEST(Positivity, HaarStateOfFunctionAlgebra) {
    FiniteQuantumGroup q = function_algebra(groups::symmetric(3));
    Positivity p = positivity_check(q.alg, q.phi);
    EXPECT_TRUE(p.positive);
    EXPECT_TRUE(p.faithful);
}

TEST(Positivity, SignedMeasureIsNotPositive) {
    StarAlgebra a = function_algebra(groups::cyclic(2)).alg;
    CVector w(2);
    w << 1.0, -1.0;
    EXPECT_FALSE(positivity_check(a, Functional{w}).positive);
}

TEST(Positivity, ZeroFunctionalIsPositiveNotFaithful) {
    StarAlgebra a = function_algebra(groups::cyclic(2)).alg;
    Positivity p = positivity_check(a, Functional{CVector::Zero(2)});
    EXPECT_TRUE(p.positive);
    EXPECT_FALSE(p.faithful);
}

TEST(Density, NormalizedTraceOnM2) {
    auto units = matrix_units(2);
    CVector w(4);
    w << 0.5, 0.0, 0.0, 0.5;
    EXPECT_LE((density_wrt_trace(units, w) - 0.5 * identity(2)).norm(), 1e-14);
}

TEST(Density, HaarOfZ2InDiagonalRepresentation) {
    std::vector<CMatrix> diag_basis{CMatrix::Zero(2, 2), CMatrix::Zero(2, 2)};
    diag_basis[0](0, 0) = 1.0;
    diag_basis[1](1, 1) = 1.0;
    CVector w(2);
    w << 0.5, 0.5;
    EXPECT_LE((density_wrt_trace(diag_basis, w) - 0.5 * identity(2)).norm(), 1e-14);
}

TEST(Density, VectorStateGivesRankOneProjection) {
    std::mt19937_64 rng(6);
    CVector xi = random_vector(2, rng);
    xi.normalize();
    auto units = matrix_units(2);
    CVector w(4);
    for (Index k = 0; k < 4; ++k) w(k) = xi.dot(units[static_cast<std::size_t>(k)] * xi);
    CMatrix d = density_wrt_trace(units, w);
    EXPECT_LE((d - xi * xi.adjoint()).norm(), 1e-13);
    for (Index k = 0; k < 4; ++k)
        EXPECT_LE(std::abs((d * units[static_cast<std::size_t>(k)]).trace() - w(k)), 1e-13);
}

TEST(Density, InconsistentOutsideAlgebra) {
    // The span of {E11, E12} is not a *-algebra; its trace form is singular.
    auto units = matrix_units(2);
    std::vector<CMatrix> bad{units[1]};
    CVector w(1);
    w << 1.0;
    try {
        density_wrt_trace(bad, w);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Inconsistent);
    }
}

TEST(AlgebraFromOperators, RecoversMatrixUnits) {
    StarAlgebra m2 = algebra_from_operators(matrix_units(2));
    EXPECT_TRUE(axioms_check(m2).all_pass());
    EXPECT_FALSE(m2.is_commutative());
    EXPECT_EQ(m2.center_dim(), 1);
    // E12* = E21
    EXPECT_LE((m2.involute(m2.basis(1)) - m2.basis(2)).norm(), 1e-14);
}
