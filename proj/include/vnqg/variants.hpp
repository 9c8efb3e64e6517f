#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "vnqg/duality.hpp"
#include "vnqg/error.hpp"
#include "vnqg/numlin.hpp"
#include "vnqg/report.hpp"

namespace vnqg {

/// Δ(y) as an operator on H⊗H for y in the represented algebra of a side.
inline CMatrix comultiply_operator(const QuantumGroupSide& s, const CMatrix& y, double threshold = 1e-9) {
    return pi_tensor(s.g, s.qg.comul * s.g.coords(y, threshold));
}

/// GNS data on H for a given operator basis and coordinate map.
inline GnsData gns_from_map(std::vector<CMatrix> basis, CMatrix lambda, const Tolerance& tol = {}) {
    GnsData g;
    g.gram = lambda.adjoint() * lambda;
    g.lambda = std::move(lambda);
    g.lambda_inv = g.lambda.inverse();
    g.span = OperatorSpan(basis, tol);
    g.pi = std::move(basis);
    return g;
}

/// (M, χΔ) with left weight ψ and GNS map Γ.
inline QuantumGroupSide build_opposite(const QuantumGroupSide& s, const Tolerance& tol = {}) {
    const Index n = s.dim();
    FiniteQuantumGroup op = make_quantum_group("op(" + s.qg.name + ")", s.qg.alg,
                                               flip_comultiplication(s.qg.comul, n), tol);
    op.phi = s.qg.psi;
    return build_side(std::move(op), gns_from_map(s.g.pi, s.rw.gamma, tol), tol);
}

/// (M′, Δ′) with Δ′(y) = (J⊗J)Δ(JyJ)(J⊗J), φ′(y) = φ(Jy*J) and
/// Λ′(y) = JΛ(JyJ), on the basis J π(e_k) J of M′.
inline QuantumGroupSide build_commutant(const QuantumGroupSide& s, const Tolerance& tol = {}) {
    const Index n = s.dim();
    const AntilinearOp& J = s.md.J;
    std::vector<CMatrix> basis;
    for (const auto& p : s.g.pi) basis.push_back(J.conjugate_linear(p));
    std::vector<std::string> labels;
    for (const auto& l : s.qg.alg.labels()) labels.push_back("J" + l + "J");
    StarAlgebra alg = algebra_from_operators(basis, std::move(labels));
    OperatorSpan span(basis, tol);

    const AntilinearOp jj = kron(J, J);
    CMatrix comul(n * n, n);
    for (Index k = 0; k < n; ++k) {
        // J b_k J = π(e_k).
        CMatrix x = jj.conjugate_linear(pi_tensor(s.g, s.qg.comul.col(k)));
        auto [c, res] = detail::tensor_coords(span, x);
        if (!(res <= 1e-9))
            throw Error(ErrorKind::Inconsistent, "Δ′ leaves M′ ⊗ M′, residual " + std::to_string(res));
        comul.col(k) = c;
    }
    FiniteQuantumGroup qg = make_quantum_group("comm(" + s.qg.name + ")", std::move(alg), std::move(comul), tol);
    // φ′(b_k) = φ(J b_k* J) = φ(e_k*) = conj φ(e_k).
    qg.phi = Functional{s.qg.phi.w.conjugate()};
    CMatrix lambda = J.apply_columns(s.g.lambda);
    return build_side(std::move(qg), gns_from_map(std::move(basis), std::move(lambda), tol), tol);
}

/// Subspace and comultiplication-evaluator equality of two quantum groups
/// realized on the same H.
inline void compare_quantum_groups(VerificationReport& r, const std::string& id, const std::string& anchor,
                                   const QuantumGroupSide& a, const QuantumGroupSide& b, double tol) {
    bool same = subspace_equal(a.g.pi, b.g.pi);
    r.add_bool(id + ".algebra", anchor + " (algebras)", same);
    if (!same) {
        r.add_skipped(id + ".comultiplication", anchor + " (comultiplications)", "algebras differ");
        return;
    }
    double res = 0.0;
    for (const auto& y : a.g.pi) res += (comultiply_operator(a, y) - comultiply_operator(b, y)).squaredNorm();
    r.add(id + ".comultiplication", anchor + " (comultiplications)", std::sqrt(res), tol);
}

struct VariantData {
    QuantumGroupSide opposite;
    QuantumGroupSide commutant;
    CMatrix w;  // ĴJ

    CMatrix phi_map(const CMatrix& x) const { return w * x * w.adjoint(); }
};

inline VariantData build_variants(const QuantumGroupSide& s, const DualQuantumGroup& d, const Tolerance& tol = {}) {
    return {build_opposite(s, tol), build_commutant(s, tol), d.side.md.J.compose(s.md.J)};
}

/// Closed forms for the variants, the three duality identities and the
/// isomorphism Φ(x) = wxw* onto (M, Δ)′^op.
inline VerificationReport variants_suite(const QuantumGroupSide& s, const DualQuantumGroup& d,
                                         const VariantData& v, const Thresholds& th = {},
                                         const Tolerance& tol = {}, const std::string& prefix = "variants") {
    VerificationReport r;
    const Index n = s.dim();
    const CMatrix sigma = flip(n);
    const AntilinearOp& J = s.md.J;
    const AntilinearOp jj = kron(J, J);
    const QuantumGroupSide& op = v.opposite;
    const QuantumGroupSide& cm = v.commutant;
    const std::string p = prefix + ".";

    r.add_bool(p + "opposite_nullity", "(M, Δ)^op has unique Haar weights",
               op.qg.left_nullity == 1 && op.qg.right_nullity == 1);
    r.add_bool(p + "commutant_nullity", "(M, Δ)′ has unique Haar weights",
               cm.qg.left_nullity == 1 && cm.qg.right_nullity == 1);
    r.add(p + "opposite_comultiplication", "Δ^op is a comultiplication",
          comultiplication_check(op.qg, th.tight).worst(), th.tight);
    r.add(p + "commutant_comultiplication", "Δ′ is a comultiplication",
          comultiplication_check(cm.qg, th.tight).worst(), th.tight);

    r.add(p + "W_op", "W^op = ΣV*Σ", (op.W - sigma * s.V.adjoint() * sigma).norm(), th.loose);
    r.add(p + "W_commutant", "W′ = (J⊗J)W(J⊗J)", (cm.W - jj.conjugate_linear(s.W)).norm(), th.loose);
    r.add(p + "W_commutant_is_V_hat", "W′ = V̂", (cm.W - d.side.V).norm(), th.loose);
    r.add(p + "delta_op", "δ^op = δ^{-1}", (op.delta.delta_op - s.delta.delta_op.inverse()).norm(), th.loose);
    r.add(p + "delta_commutant", "δ′ = JδJ", (cm.delta.delta_op - J.conjugate_linear(s.delta.delta_op)).norm(),
          th.loose);
    r.add(p + "R_op", "R^op = R", (op.a.R - s.a.R).norm(), th.loose);

    double r_comm = 0.0, tau_op = 0.0, tau_comm = 0.0;
    for (Index k = 0; k < n; ++k) {
        CMatrix lhs = cm.g.pi_of(cm.a.R.col(k));
        r_comm += (lhs - J.conjugate_linear(s.g.pi_of(s.a.R.col(k)))).squaredNorm();
    }
    for (double t : {0.5, 1.0}) {
        tau_op += (op.a.tau(t) - s.a.tau(-t)).squaredNorm();
        CMatrix tc = cm.a.tau(t), tm = s.a.tau(-t);
        for (Index k = 0; k < n; ++k)
            tau_comm += (cm.g.pi_of(tc.col(k)) - J.conjugate_linear(s.g.pi_of(tm.col(k)))).squaredNorm();
    }
    r.add(p + "R_commutant", "R′(x) = JR(JxJ)J", std::sqrt(r_comm), th.loose);
    r.add(p + "tau_op", "τ^op_t = τ_{-t}", std::sqrt(tau_op), th.loose);
    r.add(p + "tau_commutant", "τ′_t(x) = Jτ_{-t}(JxJ)J", std::sqrt(tau_comm), th.loose);
    r.add_bool(p + "commutant_dimension", "dim M′ = dim M", cm.dim() == s.dim());
    r.add_bool(p + "commutant_is_commutant", "the commutant algebra is π(M)′",
               subspace_equal(cm.g.pi, commutant(s.g.pi, n)));

    QuantumGroupSide op_op = build_opposite(op, tol);
    QuantumGroupSide cm_cm = build_commutant(cm, tol);
    compare_quantum_groups(r, p + "op_op", "((M, Δ)^op)^op = (M, Δ)", op_op, s, th.loose);
    compare_quantum_groups(r, p + "comm_comm", "((M, Δ)′)′ = (M, Δ)", cm_cm, s, th.loose);

    compare_quantum_groups(r, p + "dual_of_op", "(M, Δ)^op^ = (M, Δ)^′", build_dual(op, tol).side,
                           build_commutant(d.side, tol), th.loose);
    compare_quantum_groups(r, p + "dual_of_comm", "(M, Δ)′^ = (M, Δ)^^op", build_dual(cm, tol).side,
                           build_opposite(d.side, tol), th.loose);
    compare_quantum_groups(r, p + "comm_op", "(M, Δ)′^op = (M, Δ)^op′", build_opposite(cm, tol),
                           build_commutant(op, tol), th.loose);

    cplx phase = std::pow(cplx(s.nu.nu), 0.25 * kI);
    r.add(p + "w_unitary", "w = ĴJ is unitary", unitarity_defect(v.w), th.tight);
    r.add(p + "w_phase", "ĴJ = ν^{i/4}JĴ", (v.w - phase * J.compose(d.side.md.J)).norm(), th.tight);
    std::vector<CMatrix> image;
    for (const auto& x : s.g.pi) image.push_back(v.phi_map(x));
    r.add_bool(p + "Phi_onto_commutant", "Φ(M) = M′", subspace_equal(image, cm.g.pi));
    CMatrix ww = kron(v.w, v.w);
    double intertwine = 0.0;
    for (Index k = 0; k < n; ++k) {
        const CMatrix& x = s.g.pi[static_cast<std::size_t>(k)];
        CMatrix lhs = sigma * comultiply_operator(cm, v.phi_map(x)) * sigma;
        CMatrix rhs = ww * pi_tensor(s.g, s.qg.comul.col(k)) * ww.adjoint();
        intertwine += (lhs - rhs).squaredNorm();
    }
    r.add(p + "Phi_intertwines", "Δ′^op(Φ(x)) = (Φ⊗Φ)Δ(x)", std::sqrt(intertwine), th.loose);
    return r;
}

}  // namespace vnqg
