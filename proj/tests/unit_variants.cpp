#include <gtest/gtest.h>

#include "test_support.hpp"
#include "vnqg/variants.hpp"

using namespace vnqg;

namespace {

struct Built {
    QuantumGroupSide s;
    DualQuantumGroup d;
    VariantData v;
};

Built build(const FiniteQuantumGroup& qg) {
    QuantumGroupSide s = build_side(qg);
    DualQuantumGroup d = build_dual(s);
    VariantData v = build_variants(s, d);
    return {std::move(s), std::move(d), std::move(v)};
}

/// W^op on C(G) from Δ^op(δ_b)(δ_a⊗1) = δ_a⊗δ_{ba⁻¹}: W^op(e_a⊗e_c) = e_a⊗e_{ca}.
CMatrix opposite_w_oracle(const GroupTable& t) {
    const Index n = t.order;
    CMatrix w = CMatrix::Zero(n * n, n * n);
    for (int a = 0; a < t.order; ++a)
        for (int c = 0; c < t.order; ++c) w(a * n + t.mul(c, a), a * n + c) = 1.0;
    return w;
}

void expect_all_pass(const VerificationReport& r) {
    EXPECT_FALSE(r.empty());
    for (const auto& c : r.records()) EXPECT_TRUE(c.pass) << c.check_id << " residual " << c.residual;
}

}  // namespace

TEST(Opposite, CocommutativeGroupAlgebraIsItsOwnOpposite) {
    Built b = build(group_algebra(groups::symmetric(3)));
    EXPECT_LT((b.v.opposite.qg.comul - b.s.qg.comul).norm(), 1e-14);
    EXPECT_LT((b.v.opposite.W - b.s.W).norm(), 1e-10);
    EXPECT_LT((b.v.opposite.qg.phi.w - b.s.qg.phi.w).norm(), 1e-10);
}

TEST(Opposite, MultiplicativeUnitaryOnS3MatchesGroupTable) {
    GroupTable t = groups::symmetric(3);
    Built b = build(function_algebra(t));
    EXPECT_LT((b.v.opposite.W - opposite_w_oracle(t)).norm(), 1e-10);
    CMatrix sigma = flip(6);
    EXPECT_LT((b.v.opposite.W - sigma * b.s.V.adjoint() * sigma).norm(), 1e-10);
}

TEST(Opposite, ModularElementIsTrivialOnKacExamples) {
    for (const auto& qg : {function_algebra(groups::symmetric(3)), kac_paljutkin()}) {
        Built b = build(qg);
        EXPECT_LT((b.v.opposite.delta.delta_op - identity(b.s.dim())).norm(), 1e-10) << qg.name;
    }
}

TEST(Commutant, FunctionAlgebraIsMaximalAbelian) {
    Built b = build(function_algebra(groups::symmetric(3)));
    EXPECT_TRUE(subspace_equal(b.v.commutant.g.pi, b.s.g.pi));
}

TEST(Commutant, MatchesNumericalCommutantOnKacPaljutkin) {
    Built b = build(kac_paljutkin());
    EXPECT_EQ(b.v.commutant.dim(), b.s.dim());
    EXPECT_TRUE(subspace_equal(b.v.commutant.g.pi, commutant(b.s.g.pi, 8)));
    EXPECT_FALSE(subspace_equal(b.v.commutant.g.pi, b.s.g.pi));
}

TEST(Commutant, StructureConstantsAreConjugated) {
    Built b = build(kac_paljutkin());
    EXPECT_LT((b.v.commutant.qg.comul - b.s.qg.comul.conjugate()).norm(), 1e-10);
    for (Index i = 0; i < 8; ++i)
        EXPECT_LT((b.v.commutant.qg.alg.lmul(i) - b.s.qg.alg.lmul(i).conjugate()).norm(), 1e-10);
}

TEST(Variants, TrivialGroup) {
    Built b = build(function_algebra(groups::trivial()));
    EXPECT_LT((b.v.w - identity(1)).norm(), 1e-14);
    expect_all_pass(variants_suite(b.s, b.d, b.v));
}

TEST(Variants, DualOfOppositeIsCommutantOfDualOnZ2) {
    Built b = build(function_algebra(groups::cyclic(2)));
    VerificationReport r;
    compare_quantum_groups(r, "x", "", build_dual(b.v.opposite).side, build_commutant(b.d.side), 1e-10);
    expect_all_pass(r);
}

TEST(Variants, PhiIntertwinesOnKacPaljutkin) {
    Built b = build(kac_paljutkin());
    VerificationReport r = variants_suite(b.s, b.d, b.v);
    expect_all_pass(r);
    EXPECT_LE(r.worst("variants.Phi_intertwines"), 1e-9);
}

TEST(Variants, SuitePassesOnExamples) {
    for (const auto& qg : {function_algebra(groups::cyclic(3)), group_algebra(groups::quaternion())}) {
        Built b = build(qg);
        expect_all_pass(variants_suite(b.s, b.d, b.v));
        expect_all_pass(side_suite(b.v.opposite));
        expect_all_pass(side_suite(b.v.commutant));
    }
}

TEST(Variants, WrongImplementingUnitaryIsDetected) {
    Built b = build(function_algebra(groups::symmetric(3)));
    b.v.w = identity(6);
    VerificationReport r = variants_suite(b.s, b.d, b.v);
    EXPECT_FALSE(r.all_pass("variants.Phi_intertwines"));
}
