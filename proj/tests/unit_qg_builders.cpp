#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "vnqg/qg_builders.hpp"

using namespace vnqg;

namespace {

void expect_all_invariants(const FiniteQuantumGroup& q, double tol) {
    VerificationReport r = axioms_check(q.alg, tol);
    r.merge(comultiplication_check(q, tol));
    r.merge(haar_check(q, tol));
    for (const auto& rec : r.records())
        EXPECT_TRUE(rec.pass) << q.name << " " << rec.check_id << " residual " << rec.residual;
}

}  // namespace

TEST(GroupTable, RejectsNonLatinSquare) {
    try {
        GroupTable::from_table({{0, 1}, {0, 1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidTable);
    }
}

TEST(GroupTable, RejectsNonAssociativeLatinSquare) {
    // A Latin square with identity 0 that is not associative.
    std::vector<std::vector<int>> t{{0, 1, 2, 3, 4},
                                    {1, 0, 3, 4, 2},
                                    {2, 4, 0, 1, 3},
                                    {3, 2, 4, 0, 1},
                                    {4, 3, 1, 2, 0}};
    try {
        GroupTable::from_table(t);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidTable);
    }
}

TEST(GroupTable, BuiltinGroups) {
    EXPECT_EQ(groups::symmetric(3).order, 6);
    EXPECT_FALSE(groups::symmetric(3).is_abelian());
    GroupTable q8 = groups::quaternion();
    EXPECT_EQ(q8.order, 8);
    EXPECT_FALSE(q8.is_abelian());
    // i² = −1 in Q8: element 2 is +i, element 1 is −1.
    EXPECT_EQ(q8.mul(2, 2), 1);
    EXPECT_TRUE(groups::cyclic(4).is_abelian());
}

TEST(FunctionAlgebra, TrivialGroup) {
    FiniteQuantumGroup q = function_algebra(groups::trivial());
    EXPECT_EQ(q.dim(), 1);
    EXPECT_EQ(q.comul, CMatrix::Ones(1, 1));
}

TEST(FunctionAlgebra, Z2ConvolutionCoproduct) {
    FiniteQuantumGroup q = function_algebra(groups::cyclic(2));
    CVector expected = CVector::Zero(4);
    expected(0 * 2 + 1) = 1.0;  // δ0 ⊗ δ1
    expected(1 * 2 + 0) = 1.0;  // δ1 ⊗ δ0
    EXPECT_EQ(q.delta(q.alg.basis(1)), expected);
}

TEST(FunctionAlgebra, S3PassesAllInvariants) {
    FiniteQuantumGroup q = function_algebra(groups::symmetric(3));
    EXPECT_EQ(q.dim(), 6);
    expect_all_invariants(q, 1e-12);
    EXPECT_TRUE(q.alg.is_commutative());
    EXPECT_FALSE(q.is_cocommutative());
}

TEST(FunctionAlgebra, HaarIsUniformAverage) {
    for (int n : {2, 3, 4}) {
        FiniteQuantumGroup q = function_algebra(groups::cyclic(n));
        EXPECT_LE((q.phi.w - CVector::Constant(n, 1.0 / n)).norm(), 1e-13);
        EXPECT_LE((q.psi.w - CVector::Constant(n, 1.0 / n)).norm(), 1e-13);
        EXPECT_EQ(q.left_nullity, 1);
        EXPECT_EQ(q.right_nullity, 1);
    }
}

TEST(FunctionAlgebra, TrivialHaarIsEvaluation) {
    FiniteQuantumGroup q = function_algebra(groups::trivial());
    CVector lambda = CVector::Constant(1, cplx(2.5, -1.0));
    EXPECT_LE(std::abs(q.phi(lambda) - lambda(0)), 1e-15);
    EXPECT_EQ(q.left_nullity, 1);
}

TEST(GroupAlgebra, Z2IsCocommutative) {
    FiniteQuantumGroup q = group_algebra(groups::cyclic(2));
    for (Index g = 0; g < 2; ++g) {
        CVector ug = q.alg.basis(g);
        EXPECT_EQ(q.delta(ug), kron_vec(ug, ug));
    }
    EXPECT_TRUE(q.is_cocommutative());
}

TEST(GroupAlgebra, S3IsNoncommutative) {
    GroupTable s3 = groups::symmetric(3);
    FiniteQuantumGroup q = group_algebra(s3);
    // transpositions 213 and 132 do not commute
    Index s = 2, t = 1;
    ASSERT_EQ(s3.labels[2], "213");
    ASSERT_EQ(s3.labels[1], "132");
    CVector comm = q.alg.multiply(q.alg.basis(s), q.alg.basis(t)) -
                   q.alg.multiply(q.alg.basis(t), q.alg.basis(s));
    EXPECT_GT(comm.norm(), 1.0);
    expect_all_invariants(q, 1e-12);
}

TEST(GroupAlgebra, HaarOfLZ3IsIdentityCoefficient) {
    FiniteQuantumGroup q = group_algebra(groups::cyclic(3));
    EXPECT_LE((q.phi.w - CVector::Unit(3, 0)).norm(), 1e-13);
    EXPECT_LE((q.psi.w - CVector::Unit(3, 0)).norm(), 1e-13);
    EXPECT_EQ(q.left_nullity, 1);
}

TEST(KacPaljutkin, DimensionAndCenter) {
    FiniteQuantumGroup q = kac_paljutkin();
    EXPECT_EQ(q.dim(), 8);
    EXPECT_EQ(q.alg.center_dim(), 5);
    // Same count from the commutant of the left regular representation
    // intersected with the algebra.
    auto comm = commutant(q.alg.lmul(), 8);
    std::vector<CMatrix> right;
    for (Index k = 0; k < 8; ++k) right.push_back(q.alg.right_matrix(q.alg.basis(k)));
    EXPECT_EQ(intersection_dim(q.alg.lmul(), right), 5);
    EXPECT_TRUE(subspace_equal(comm, span_basis(right)));
}

TEST(KacPaljutkin, AllInvariantsAndUniqueTracialHaar) {
    FiniteQuantumGroup q = kac_paljutkin();
    expect_all_invariants(q, 1e-12);
    EXPECT_EQ(q.left_nullity, 1);
    EXPECT_EQ(q.right_nullity, 1);
    EXPECT_LE((q.phi.w - q.psi.w).norm(), 1e-12);
    // φ restricted to ℂ⁴ ⊕ M₂ is (1/8)Σ ε_i + (1/8)Tr on M₂, so φ(E11) = 1/8 + 1/8.
    CVector expected(8);
    expected << 0.125, 0.125, 0.125, 0.125, 0.25, 0.0, 0.0, 0.25;
    EXPECT_LE((q.phi.w - expected).norm(), 1e-12);
}

TEST(KacPaljutkin, NeitherCommutativeNorCocommutative) {
    FiniteQuantumGroup q = kac_paljutkin();
    EXPECT_FALSE(q.alg.is_commutative());
    EXPECT_FALSE(q.is_cocommutative());
    EXPECT_GT((flip_comultiplication(q.comul, 8) - q.comul).norm(), 0.1);
}

TEST(ComultiplicationCheck, FunctionAlgebraOfZ4) {
    EXPECT_TRUE(comultiplication_check(function_algebra(groups::cyclic(4))).all_pass());
}

TEST(ComultiplicationCheck, OppositeComultiplicationIsValid) {
    FiniteQuantumGroup q = function_algebra(groups::symmetric(3));
    CMatrix op = flip_comultiplication(q.comul, 6);
    EXPECT_GT((op - q.comul).norm(), 0.1);
    EXPECT_TRUE(comultiplication_check(q.alg, op).all_pass());
}

TEST(ComultiplicationCheck, ZeroedEntryBreaksCoassociativity) {
    FiniteQuantumGroup q = function_algebra(groups::symmetric(3));
    CMatrix broken = q.comul;
    Index row = 0;
    while (broken(row, 3) == cplx(0.0)) ++row;
    broken(row, 3) = 0.0;
    VerificationReport r = comultiplication_check(q.alg, broken);
    EXPECT_FALSE(r.all_pass("comultiplication.coassociativity"));
}

TEST(SolveHaar, Z2IsHalfSumOfEvaluations) {
    FiniteQuantumGroup q = function_algebra(groups::cyclic(2));
    // Brute force: (ι⊗φ)Δ(δ_k) = Σ_g φ(δ_{g⁻¹k}) δ_g must equal φ(δ_k)1.
    CVector expected(2);
    expected << 0.5, 0.5;
    EXPECT_LE((q.phi.w - expected).norm(), 1e-14);
}

TEST(SolveHaar, NonUniqueWhenInvarianceIsVacuous) {
    // Δ(x) = 1 ⊗ x makes every functional left invariant.
    StarAlgebra a = function_algebra(groups::cyclic(2)).alg;
    CMatrix comul = kron(a.unit(), CMatrix(identity(2)));
    try {
        solve_haar(a, comul);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonUnique);
    }
}

TEST(SolveHaar, NoSolutionWhenInvarianceIsImpossible) {
    // Δ(x) = x ⊗ 1 forces φ = 0 on the left side.
    StarAlgebra a = function_algebra(groups::cyclic(2)).alg;
    CMatrix comul = kron(CMatrix(identity(2)), CMatrix(a.unit()));
    try {
        solve_haar(a, comul);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoPositiveSolution);
    }
}

TEST(SolveHaar, StrengthenedInvarianceOnAllElements) {
    std::mt19937_64 rng(7);
    for (const FiniteQuantumGroup& q :
         {function_algebra(groups::quaternion()), group_algebra(groups::quaternion()), kac_paljutkin()}) {
        const Index n = q.dim();
        for (int trial = 0; trial < 5; ++trial) {
            CVector x = vnqg::testing::random_vector(n, rng);
            CVector dx = q.delta(x);
            // (ι⊗φ) contracts the second leg.
            CVector slice = CVector::Zero(n);
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j) slice(i) += dx(i * n + j) * q.phi.w(j);
            EXPECT_LE((slice - q.phi(x) * q.alg.unit()).norm(), 1e-12) << q.name;
        }
    }
}
