#include <gtest/gtest.h>

#include "test_support.hpp"
#include "vnqg/duality.hpp"

using namespace vnqg;
using vnqg::testing::random_unitary;
using vnqg::testing::random_vector;

namespace {

struct Built {
    QuantumGroupSide s;
    DualQuantumGroup d;
};

Built build(const FiniteQuantumGroup& qg) {
    QuantumGroupSide s = build_side(qg);
    DualQuantumGroup d = build_dual(s);
    return {std::move(s), std::move(d)};
}

Functional ev(Index n, Index g) { return {CVector::Unit(n, g)}; }

/// Translation e_b ↦ e_{gb} on ℂ^G.
CMatrix translation(const GroupTable& t, int g) {
    CMatrix m = CMatrix::Zero(t.order, t.order);
    for (int b = 0; b < t.order; ++b) m(t.mul(g, b), b) = 1.0;
    return m;
}

std::vector<CMatrix> diagonal_units(Index n) {
    std::vector<CMatrix> out;
    for (Index k = 0; k < n; ++k) {
        CMatrix e = CMatrix::Zero(n, n);
        e(k, k) = 1.0;
        out.push_back(e);
    }
    return out;
}

void expect_all_pass(const VerificationReport& r) {
    EXPECT_FALSE(r.empty());
    for (const auto& c : r.records()) EXPECT_TRUE(c.pass) << c.check_id << " residual " << c.residual;
}

}  // namespace

TEST(Predual, EvaluationsConvolveLikeGroupElements) {
    GroupTable t = groups::symmetric(3);
    FiniteQuantumGroup qg = function_algebra(t);
    for (int g = 0; g < t.order; ++g)
        for (int h = 0; h < t.order; ++h)
            EXPECT_LT((predual_product(qg, ev(6, g), ev(6, h)).w - ev(6, t.mul(g, h)).w).norm(), 1e-14);
    for (int g = 0; g < t.order; ++g) {
        EXPECT_LT((predual_product(qg, ev(6, t.identity), ev(6, g)).w - ev(6, g).w).norm(), 1e-14);
        EXPECT_LT((predual_product(qg, ev(6, g), ev(6, t.identity)).w - ev(6, g).w).norm(), 1e-14);
    }
}

TEST(Predual, SharpOfEvaluationIsEvaluationAtInverse) {
    GroupTable t = groups::symmetric(3);
    Built b = build(function_algebra(t));
    for (int g = 0; g < t.order; ++g)
        EXPECT_LT((sharp_star(b.s.qg.alg, b.s.a, ev(6, g)).w - ev(6, t.inv(g)).w).norm(), 1e-12);
}

TEST(Predual, LambdaOfEvaluationIsTranslation) {
    for (GroupTable t : {groups::cyclic(2), groups::cyclic(3), groups::symmetric(3)}) {
        Built b = build(function_algebra(t));
        for (int g = 0; g < t.order; ++g)
            EXPECT_LT((b.d.maps.lambda(ev(t.order, g)) - translation(t, g)).norm(), 1e-12) << t.name;
    }
}

TEST(Predual, LambdaAgreesWithDensitySlice) {
    Built b = build(kac_paljutkin());
    std::mt19937_64 rng(3);
    const Index n = b.s.dim();
    for (int k = 0; k < 4; ++k) {
        Functional om{random_vector(n, rng)};
        CMatrix dens = density_wrt_trace(b.s.g.pi, om.w);
        EXPECT_LT((slice_first(b.s.W, dens, n, n) - b.d.maps.lambda(om)).norm(), 1e-11);
    }
}

TEST(Predual, XiOfEvaluationOnFunctionAlgebra) {
    // ev_g(δ_k*) = [g = k] and Λ(δ_k) = e_k/√|G|, so ξ(ev_g) = √|G| e_g.
    Built b = build(function_algebra(groups::cyclic(4)));
    for (Index g = 0; g < 4; ++g) EXPECT_LT((b.d.maps.xi_of(ev(4, g)) - 2.0 * CVector::Unit(4, g)).norm(), 1e-12);
}

TEST(Predual, ChecksPassOnS3AndKacPaljutkin) {
    for (const auto& qg : {function_algebra(groups::symmetric(3)), kac_paljutkin()}) {
        Built b = build(qg);
        expect_all_pass(predual_check(b.s, b.d.maps, 1e-10));
    }
}

TEST(Dual, TrivialGroupIsSelfDual) {
    Built b = build(function_algebra(groups::trivial()));
    ASSERT_EQ(b.d.dim(), 1);
    EXPECT_LT((b.d.basis[0] - identity(1)).norm(), 1e-14);
    EXPECT_LT((b.d.side.md.nabla - identity(1)).norm(), 1e-14);
    EXPECT_LT((b.d.side.md.J.mat - identity(1)).norm(), 1e-14);
    EXPECT_LT((b.d.side.W - identity(1)).norm(), 1e-14);
}

TEST(Dual, FlagsSwapForFunctionAndGroupAlgebras) {
    Built z2 = build(function_algebra(groups::cyclic(2)));
    EXPECT_EQ(z2.d.dim(), 2);
    EXPECT_TRUE(z2.d.side.qg.alg.is_commutative());
    EXPECT_TRUE(z2.d.side.qg.is_cocommutative());

    Built s3 = build(function_algebra(groups::symmetric(3)));
    EXPECT_TRUE(s3.s.qg.alg.is_commutative());
    EXPECT_FALSE(s3.s.qg.is_cocommutative());
    EXPECT_EQ(s3.d.dim(), 6);
    EXPECT_FALSE(s3.d.side.qg.alg.is_commutative());
    EXPECT_TRUE(s3.d.side.qg.is_cocommutative());
    // Center of the dual = M̂ ∩ M̂′: one dimension per conjugacy class of S₃.
    EXPECT_EQ(intersection_dim(s3.d.basis, commutant(s3.d.basis, 6)), 3);

    Built l3 = build(group_algebra(groups::symmetric(3)));
    EXPECT_TRUE(l3.d.side.qg.alg.is_commutative());
    EXPECT_FALSE(l3.d.side.qg.is_cocommutative());
}

TEST(Dual, DualOfFunctionAlgebraIsTranslationAlgebra) {
    GroupTable t = groups::symmetric(3);
    Built b = build(function_algebra(t));
    std::vector<CMatrix> translations;
    for (int g = 0; g < t.order; ++g) translations.push_back(translation(t, g));
    EXPECT_TRUE(subspace_equal(b.d.basis, translations));
}

TEST(Dual, ChecksPassOnAllExamples) {
    for (const auto& qg : {function_algebra(groups::cyclic(3)), group_algebra(groups::quaternion()), kac_paljutkin()}) {
        Built b = build(qg);
        expect_all_pass(dual_check(b.s, b.d, 1e-10));
        expect_all_pass(side_suite(b.d.side));
        EXPECT_NEAR(b.d.side.nu.nu, 1.0 / b.s.nu.nu, 1e-10);
    }
}

TEST(DualModular, JHatIsInvolutiveOnZ2) {
    Built b = build(function_algebra(groups::cyclic(2)));
    const AntilinearOp& j = b.d.side.md.J;
    EXPECT_LT((j.compose(j) - identity(2)).norm(), 1e-12);
    EXPECT_LT(unitarity_defect(j.mat), 1e-12);
}

TEST(DualUnitaries, WHatMatchesFlippedAdjointOnZ2) {
    Built b = build(function_algebra(groups::cyclic(2)));
    CMatrix sigma = flip(2);
    EXPECT_LT((b.d.side.W - sigma * b.s.W.adjoint() * sigma).norm(), 1e-12);
}

TEST(DualUnitaries, TrivialGroupGivesUnits) {
    Built b = build(function_algebra(groups::trivial()));
    for (const CMatrix* u : {&b.s.W, &b.s.V, &b.d.side.W, &b.d.side.V}) EXPECT_LT((*u - identity(1)).norm(), 1e-14);
}

TEST(DualUnitaries, PassOnKacPaljutkin) {
    Built b = build(kac_paljutkin());
    expect_all_pass(dual_unitaries(b.s, b.d));
}

TEST(DualityTheorem, TwoPathEqualitiesOnS3) {
    Built b = build(function_algebra(groups::symmetric(3)));
    EXPECT_LT((b.d.side.md.T.sharp().mat - b.s.pg.G.mat).norm(), 1e-10);
    EXPECT_LT((b.d.side.md.nabla - b.s.pg.N.inverse()).norm(), 1e-10);
    EXPECT_LT((b.d.side.md.J.mat - b.s.pg.I.mat).norm(), 1e-10);
    expect_all_pass(duality_theorem_suite(b.s, b.d));
}

TEST(DualityTheorem, PhaseCorollaryOnKacPaljutkin) {
    Built b = build(kac_paljutkin());
    const AntilinearOp& j = b.s.md.J;
    const AntilinearOp& jh = b.d.side.md.J;
    EXPECT_LT((jh.compose(j) - j.compose(jh)).norm(), 1e-10);
    expect_all_pass(duality_theorem_suite(b.s, b.d));
}

TEST(DualityTheorem, RotatedJHatIsDetected) {
    Built b = build(function_algebra(groups::symmetric(3)));
    std::mt19937_64 rng(5);
    b.d.side.md.J = random_unitary(6, rng) * b.d.side.md.J;
    VerificationReport r = duality_theorem_suite(b.s, b.d);
    EXPECT_FALSE(r.all_pass("duality.J_hat_is_I"));
    EXPECT_FALSE(r.all_pass("duality.J_hat_Gamma"));
}

TEST(Pontryagin, DoubleDualOfZ2IsDiagonalAlgebra) {
    Built b = build(function_algebra(groups::cyclic(2)));
    DualQuantumGroup dd = build_dual(b.d.side);
    EXPECT_TRUE(subspace_equal(dd.basis, diagonal_units(2)));
    expect_all_pass(pontryagin_check(b.s, b.d));
}

TEST(Pontryagin, KacPaljutkinRecoversLambda) {
    Built b = build(kac_paljutkin());
    VerificationReport r = pontryagin_check(b.s, b.d);
    expect_all_pass(r);
    EXPECT_LE(r.worst("pontryagin.lambda"), 1e-9);
}

TEST(CommutationTable, PassesOnS3WithSwap) {
    Built b = build(function_algebra(groups::symmetric(3)));
    VerificationReport r = commutation_table(commutation_inputs(b.s, b.d), 1e-9);
    EXPECT_EQ(r.size(), 16u);
    expect_all_pass(r);
}

TEST(CommutationTable, FakeModularElementFails) {
    Built b = build(function_algebra(groups::symmetric(3)));
    CommutationInputs in = commutation_inputs(b.s, b.d);
    CVector diag(6);
    for (Index k = 0; k < 6; ++k) diag(k) = static_cast<double>(k + 1);
    // Conjugate the diagonal so it is not accidentally fixed by Ĵ.
    std::mt19937_64 rng(9);
    CMatrix u = random_unitary(6, rng);
    in.delta = u * diag.asDiagonal() * u.adjoint();
    VerificationReport r = commutation_table(in, 1e-9);
    EXPECT_FALSE(r.all_pass("commutation.com4"));
}

TEST(Intersection, TrivialOnExamples) {
    for (const auto& qg : {function_algebra(groups::trivial()), function_algebra(groups::cyclic(2)), kac_paljutkin()}) {
        Built b = build(qg);
        EXPECT_EQ(intersection_check(b.s, b.d), 1) << qg.name;
    }
}

TEST(Intersection, DiagonalMeetsTranslationsInScalars) {
    GroupTable t = groups::cyclic(2);
    std::vector<CMatrix> translations{translation(t, 0), translation(t, 1)};
    EXPECT_EQ(intersection_dim(diagonal_units(2), translations), 1);
    Built b = build(function_algebra(t));
    EXPECT_TRUE(subspace_equal(b.d.basis, translations));
    EXPECT_TRUE(subspace_equal(b.s.g.pi, diagonal_units(2)));
}

TEST(Dual, TamperedWIsRejected) {
    Built b = build(kac_paljutkin());
    QuantumGroupSide tampered = b.s;
    tampered.W(3, 5) += 0.25;
    EXPECT_THROW(
        {
            try {
                build_dual(tampered);
            } catch (const Error& e) {
                EXPECT_TRUE(e.kind() == ErrorKind::Inconsistent || e.kind() == ErrorKind::NotInAlgebra) << e.what();
                throw;
            }
        },
        Error);
}
