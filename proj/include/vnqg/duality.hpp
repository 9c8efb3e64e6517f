#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vnqg/antipode.hpp"
#include "vnqg/error.hpp"
#include "vnqg/gns_modular.hpp"
#include "vnqg/numlin.hpp"
#include "vnqg/qg_builders.hpp"
#include "vnqg/report.hpp"
#include "vnqg/star_algebra.hpp"

namespace vnqg {

/// Everything the antipode module constructs for one quantum group and one
/// GNS realization (H, ι, Λ) of its left Haar weight. `qg.psi` is replaced by
/// the adopted right weight φR.
struct QuantumGroupSide {
    FiniteQuantumGroup qg;
    GnsData g;
    ModularData md;
    CMatrix W;
    PolarG pg;
    AntipodeData a;
    NuFit nu;
    DeltaData delta;
    RightWeightData rw;
    CMatrix V;
    OperatorP P;

    Index dim() const { return g.dim(); }
};

inline QuantumGroupSide build_side(FiniteQuantumGroup qg, GnsData g, const Tolerance& tol = {}) {
    QuantumGroupSide s;
    s.md = modular_data(qg.alg, g, tol);
    s.W = build_W(qg.alg, qg.comul, g);
    s.pg = build_G(qg.alg, qg.comul, g, qg.psi, 1e-9, tol);
    s.a = antipode_data(s.pg, g);
    s.nu = compute_nu(qg.phi, s.a);
    qg.psi = adopt_right_weight(qg.phi, qg.psi, s.a);
    s.delta = compute_delta(g, qg.phi, qg.psi, 1e-9, tol);
    s.rw = right_weight_gns(qg.alg, g, s.md, s.delta, s.nu.nu, 1e-9, tol);
    s.V = build_V(qg.alg, qg.comul, s.rw.gamma);
    s.P = build_P(s.pg.N, g, s.nu.nu, tol);
    s.qg = std::move(qg);
    s.g = std::move(g);
    return s;
}

inline QuantumGroupSide build_side(FiniteQuantumGroup qg, const Tolerance& tol = {}) {
    GnsData g = build_gns(qg, tol);
    return build_side(std::move(qg), std::move(g), tol);
}

/// All single-side suites: axioms, Haar, GNS, modular, W, G, antipode, δ, V, P.
inline VerificationReport side_suite(const QuantumGroupSide& s, const Thresholds& th = {}) {
    VerificationReport r;
    const FiniteQuantumGroup& qg = s.qg;
    const double tol = th.tight;
    r.merge(axioms_check(qg.alg, tol));
    r.merge(comultiplication_check(qg, tol));
    FiniteQuantumGroup normalized = qg;
    normalized.phi = qg.phi * (1.0 / qg.phi(qg.alg.unit()));
    normalized.psi = qg.psi * (1.0 / qg.psi(qg.alg.unit()));
    r.merge(haar_check(normalized, tol));
    r.merge(gns_check(qg.alg, qg.phi, s.g, tol));
    r.merge(modular_check(qg.alg, s.g, s.md, tol));
    r.merge(w_structure_suite(qg.alg, qg.comul, s.g, s.W, s.md, s.pg, qg.psi, tol));
    r.merge(polar_check(s.pg, tol));
    r.merge(antipode_check(qg, s.a, tol));
    r.merge(strong_invariance_check(qg, s.a, qg.psi, tol));
    r.add("scaling.nu_fit", "φτ_t = ν^{-t}φ at t = 1, 2", std::max(s.nu.residual_t1, s.nu.residual_t2), tol);
    r.add("scaling.kac", "ν = 1 at finite dimension", std::abs(s.nu.nu - 1.0), tol);
    r.merge(delta_identity_suite(qg, s.g, s.md, s.a, s.delta, s.rw, qg.psi, s.nu.nu, tol));
    r.merge(v_structure_suite(qg.alg, qg.comul, s.rw.gamma, s.V, s.rw.nabla, s.pg.N, qg.psi, tol));
    r.merge(p_suite(s.g, s.pg.N, s.P, s.nu.nu, tol));
    return r;
}

/// Convolution ωθ = (ω⊗θ)Δ.
inline Functional predual_product(const FiniteQuantumGroup& qg, const Functional& omega,
                                  const Functional& theta) {
    return {qg.comul.transpose() * kron_vec(omega.w, theta.w)};
}

/// ω*(x) = ω̄(S(x)) with ω̄(x) = conj ω(x*).
inline Functional sharp_star(const StarAlgebra& alg, const AntipodeData& a, const Functional& omega) {
    CVector bar = (alg.star().transpose() * omega.w).conjugate();
    return {a.S.transpose() * bar};
}

/// λ(ω) = (ω⊗ι)(W) and ξ(ω) with ω(x*) = ⟨ξ(ω), Λ(x)⟩, both linear in ω
/// and stored on the dual basis ε_k(e_j) = δ_kj of M_*.
struct PredualMaps {
    std::vector<CMatrix> slices;  // λ(ε_k); W = Σ_k π(e_k) ⊗ λ(ε_k)
    CMatrix xi;                   // column k is ξ(ε_k)
    double slice_residual = 0.0;

    CMatrix lambda(const Functional& omega) const {
        CMatrix out = CMatrix::Zero(slices.front().rows(), slices.front().cols());
        for (std::size_t k = 0; k < slices.size(); ++k) out += omega.w(static_cast<Index>(k)) * slices[k];
        return out;
    }

    CVector xi_of(const Functional& omega) const { return xi * omega.w; }
};

inline PredualMaps predual_maps(const StarAlgebra& alg, const GnsData& g, const CMatrix& w,
                                double tol = 1e-9) {
    PredualMaps m;
    auto [slices, res] = first_leg_slices(w, g.pi, g.dim());
    m.slices = std::move(slices);
    m.slice_residual = res / std::max(1.0, w.norm());
    if (!(m.slice_residual <= tol))
        throw Error(ErrorKind::Inconsistent, "first leg of W leaves π(M), residual " +
                                                 std::to_string(m.slice_residual));
    // ω(e_j*) = Σ_k star(k, j) ω_k = Λ(e_j)ᴴ ξ(ω).
    m.xi = g.lambda_inv.adjoint() * alg.star().transpose();
    return m;
}

inline std::pair<CMatrix, CVector> lambda_xi(const PredualMaps& m, const Functional& omega) {
    return {m.lambda(omega), m.xi_of(omega)};
}

namespace detail {

inline Functional random_functional(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    CVector w(n);
    for (Index i = 0; i < n; ++i) w(i) = cplx(d(rng), d(rng));
    return {w};
}

/// X = Σ_ij c_ij B_i ⊗ B_j in a basis of operators; returns c at i·n + j and
/// the relative fit residual.
inline std::pair<CVector, double> tensor_coords(const OperatorSpan& span, const CMatrix& x) {
    const Index n = span.size();
    auto [slices, res] = first_leg_slices(x, span.basis(), span.ambient());
    double total = res * res;
    CVector c(n * n);
    for (Index i = 0; i < n; ++i) {
        auto [ci, ri] = span.fit(slices[static_cast<std::size_t>(i)]);
        c.segment(i * n, n) = ci;
        total += ri * ri;
    }
    return {c, std::sqrt(total) / std::max(1.0, x.norm())};
}

/// Residual of X ∈ A ⊗ B with A given by a basis and B by a span.
inline double membership_residual(const CMatrix& x, const std::vector<CMatrix>& first,
                                  const OperatorSpan& second) {
    auto [slices, res] = first_leg_slices(x, first, second.ambient());
    double total = res * res;
    for (const auto& s : slices) total += std::pow(second.distance(s) * std::max(1.0, s.norm()), 2);
    return std::sqrt(total);
}

}  // namespace detail

/// Convolution, sharp involution, λ and ξ on seeded random functionals.
inline VerificationReport predual_check(const QuantumGroupSide& s, const PredualMaps& m, double tol,
                                        std::uint64_t seed = 7, int samples = 8,
                                        const std::string& prefix = "predual") {
    VerificationReport r;
    const FiniteQuantumGroup& qg = s.qg;
    const StarAlgebra& alg = qg.alg;
    const Index n = alg.dim();
    std::mt19937_64 rng(seed);
    double assoc = 0.0, mult = 0.0, star = 0.0, module = 0.0, defining = 0.0, invol = 0.0, anti = 0.0;
    for (int k = 0; k < samples; ++k) {
        Functional om = detail::random_functional(n, rng);
        Functional th = detail::random_functional(n, rng);
        Functional et = detail::random_functional(n, rng);
        Functional om_th = predual_product(qg, om, th);
        assoc += (predual_product(qg, om_th, et).w - predual_product(qg, om, predual_product(qg, th, et)).w)
                     .squaredNorm();
        mult += (m.lambda(om_th) - m.lambda(om) * m.lambda(th)).squaredNorm();
        Functional om_s = sharp_star(alg, s.a, om);
        star += (m.lambda(om_s) - m.lambda(om).adjoint()).squaredNorm();
        module += (m.lambda(et) * m.xi_of(om) - m.xi_of(predual_product(qg, et, om))).squaredNorm();
        for (Index j = 0; j < n; ++j) {
            CVector x = alg.basis(j);
            defining += std::norm(s.g.vec(x).dot(m.xi_of(om)) - om(alg.involute(x)));
        }
        invol += (sharp_star(alg, s.a, om_s).w - om.w).squaredNorm();
        anti += (sharp_star(alg, s.a, om_th).w -
                 predual_product(qg, sharp_star(alg, s.a, th), om_s).w)
                    .squaredNorm();
    }
    r.add(prefix + ".associativity", "(ωθ)η = ω(θη)", std::sqrt(assoc), tol);
    r.add(prefix + ".lambda_multiplicative", "λ(ωθ) = λ(ω)λ(θ)", std::sqrt(mult), tol);
    r.add(prefix + ".lambda_star", "λ(ω*) = λ(ω)*", std::sqrt(star), tol);
    r.add(prefix + ".xi_module", "λ(η)ξ(ω) = ξ(ηω)", std::sqrt(module), tol);
    r.add(prefix + ".xi_defining", "ω(x*) = ⟨ξ(ω), Λ(x)⟩", std::sqrt(defining), tol);
    r.add(prefix + ".sharp_involutive", "(ω*)* = ω", std::sqrt(invol), tol);
    r.add(prefix + ".sharp_antimultiplicative", "(ωθ)* = θ*ω*", std::sqrt(anti), tol);
    r.add(prefix + ".W_first_leg", "W ∈ M ⊗ B(H)", m.slice_residual, tol);
    Index lam_rank = rank(stack_vecs(m.slices));
    r.add_bool(prefix + ".lambda_injective", "λ is injective", lam_rank == n, "rank " + std::to_string(lam_rank));
    Index xi_rank = rank(m.xi);
    r.add_bool(prefix + ".xi_spanning", "H = [ξ(ω)]", xi_rank == n, "rank " + std::to_string(xi_rank));
    return r;
}

/// The dual (M̂, Δ̂, φ̂) realized on H with GNS map Λ̂(λ(ω)) = ξ(ω), and the
/// antipode pipeline rerun on it.
struct DualQuantumGroup {
    PredualMaps maps;
    std::vector<CMatrix> basis;  // M̂ ⊂ B(H), basis λ(ε_k)
    Functional solver_phi;       // left Haar state from the dual's own solver
    double comul_residual = 0.0;
    double weight_residual = 0.0;
    QuantumGroupSide side;

    Index dim() const { return static_cast<Index>(basis.size()); }

    /// Δ̂(y) = ΣW(y⊗1)W*Σ as an operator.
    CMatrix comultiply(const CMatrix& w, const CMatrix& y) const {
        const Index h = y.rows();
        CMatrix sigma = flip(h);
        return sigma * w * kron(y, identity(h)) * w.adjoint() * sigma;
    }
};

inline DualQuantumGroup build_dual(const QuantumGroupSide& s, const Tolerance& tol = {}) {
    DualQuantumGroup d;
    const StarAlgebra& alg = s.qg.alg;
    const Index n = alg.dim();
    d.maps = predual_maps(alg, s.g, s.W);
    d.basis = d.maps.slices;

    std::vector<std::string> labels;
    for (const auto& l : alg.labels()) labels.push_back("λ(" + l + ")");
    StarAlgebra alg_hat = algebra_from_operators(d.basis, std::move(labels));
    OperatorSpan span(d.basis, tol);

    CMatrix comul_hat(n * n, n);
    for (Index k = 0; k < n; ++k) {
        auto [c, res] = detail::tensor_coords(span, d.comultiply(s.W, d.basis[static_cast<std::size_t>(k)]));
        comul_hat.col(k) = c;
        d.comul_residual = std::max(d.comul_residual, res);
    }
    if (!(d.comul_residual <= 1e-9))
        throw Error(ErrorKind::Inconsistent, "Δ̂ leaves M̂ ⊗ M̂, residual " + std::to_string(d.comul_residual));

    // φ̂(e_i* e_j) = ⟨Λ̂(e_j), Λ̂(e_i)⟩ determines φ̂ because the products span M̂.
    const CMatrix& lambda_hat = d.maps.xi;
    CMatrix gram_hat = lambda_hat.adjoint() * lambda_hat;
    CMatrix sys(n * n, n);
    CVector rhs(n * n);
    for (Index i = 0; i < n; ++i) {
        CVector ei_star = alg_hat.involute(alg_hat.basis(i));
        for (Index j = 0; j < n; ++j) {
            sys.row(i * n + j) = alg_hat.multiply(ei_star, alg_hat.basis(j)).transpose();
            rhs(i * n + j) = gram_hat(i, j);
        }
    }
    CVector phi_hat = sys.colPivHouseholderQr().solve(rhs);
    d.weight_residual = (sys * phi_hat - rhs).norm() / std::max(1.0, rhs.norm());
    if (!(d.weight_residual <= 1e-9))
        throw Error(ErrorKind::Inconsistent, "no functional has Λ̂ as GNS map, residual " +
                                                 std::to_string(d.weight_residual));

    FiniteQuantumGroup qg_hat = make_quantum_group("dual(" + s.qg.name + ")", std::move(alg_hat),
                                                   std::move(comul_hat), tol);
    d.solver_phi = qg_hat.phi;
    qg_hat.phi = Functional{phi_hat};

    GnsData gh;
    gh.gram = gram_hat;
    gh.lambda = lambda_hat;
    gh.lambda_inv = lambda_hat.inverse();
    gh.pi = d.basis;
    gh.span = std::move(span);
    d.side = build_side(std::move(qg_hat), std::move(gh), tol);
    return d;
}

/// Dual-side invariants: the solver's Haar state agrees with φ̂, Δ̂ lands in
/// M̂⊗M̂, λ(M_*) is already an algebra, ν̂ = ν^{-1}, T̂Λ̂(λ(ω)) = Λ̂(λ(ω*)).
inline VerificationReport dual_check(const QuantumGroupSide& s, const DualQuantumGroup& d, double tol,
                                     std::uint64_t seed = 11, int samples = 8,
                                     const std::string& prefix = "dual") {
    VerificationReport r;
    const Functional& phi_hat = d.side.qg.phi;
    cplx c = phi_hat.w.dot(d.solver_phi.w) / phi_hat.w.squaredNorm();
    double prop = (d.solver_phi.w - c * phi_hat.w).norm() / std::max(1.0, d.solver_phi.w.norm());
    r.add(prefix + ".haar_proportional", "φ̂ is left invariant: the solver's Haar state is a positive multiple",
          (c.real() > 0.0 && std::abs(c.imag()) <= tol) ? prop : std::max(prop, 1.0), tol);
    r.add(prefix + ".comultiplication_lands", "Δ̂(x) = ΣW(x⊗1)W*Σ ∈ M̂⊗M̂", d.comul_residual, tol);
    r.add(prefix + ".weight_fit", "φ̂ has (H, ι, Λ̂) as GNS construction", d.weight_residual, tol);
    r.add(prefix + ".nu_inverse", "ν̂ = ν^{-1}", std::abs(d.side.nu.nu - 1.0 / s.nu.nu), tol);
    r.add_bool(prefix + ".dimension", "dim M̂ = dim M", d.dim() == s.dim());
    double closure = subspace_distance(algebra_closure(d.basis, s.dim()), d.basis);
    r.add(prefix + ".lambda_spans", "λ(M_*) spans M̂", closure, tol);

    std::mt19937_64 rng(seed);
    double t_hat = 0.0;
    const AntilinearOp& T = d.side.md.T;
    for (int k = 0; k < samples; ++k) {
        Functional om = detail::random_functional(s.dim(), rng);
        Functional om_s = sharp_star(s.qg.alg, s.a, om);
        t_hat += (T.apply(d.maps.xi_of(om)) - d.maps.xi_of(om_s)).squaredNorm();
    }
    r.add(prefix + ".T_hat_lambda", "T̂Λ̂(λ(ω)) = Λ̂(λ(ω*))", std::sqrt(t_hat), tol);
    return r;
}

/// Ŵ, V, V̂ from their defining GNS formulas against the closed forms, with
/// memberships and pentagons.
inline VerificationReport dual_unitaries(const QuantumGroupSide& s, const DualQuantumGroup& d,
                                         const Thresholds& th = {},
                                         const std::string& prefix = "unitaries") {
    VerificationReport r;
    const Index n = s.dim();
    const CMatrix sigma = flip(n);
    const CMatrix& w = s.W;
    const CMatrix& w_hat = d.side.W;
    const CMatrix& v = s.V;
    const CMatrix& v_hat = d.side.V;
    const CMatrix sws = sigma * w.adjoint() * sigma;
    const AntilinearOp jj_hat = kron(d.side.md.J, d.side.md.J);
    const AntilinearOp jj = kron(s.md.J, s.md.J);

    r.add(prefix + ".W_hat_closed_form", "Ŵ = ΣW*Σ", (w_hat - sws).norm(), th.loose);
    r.add(prefix + ".V_closed_form", "V = (Ĵ⊗Ĵ)ΣW*Σ(Ĵ⊗Ĵ)", (v - jj_hat.conjugate_linear(sws)).norm(), th.loose);
    r.add(prefix + ".V_hat_closed_form", "V̂ = (J⊗J)W(J⊗J)", (v_hat - jj.conjugate_linear(w)).norm(), th.loose);

    r.add(prefix + ".pentagon_W", "W₁₂W₁₃W₂₃ = W₂₃W₁₂", pentagon_residual(w, n), th.tight);
    r.add(prefix + ".pentagon_W_hat", "Ŵ₁₂Ŵ₁₃Ŵ₂₃ = Ŵ₂₃Ŵ₁₂", pentagon_residual(w_hat, n), th.tight);
    r.add(prefix + ".pentagon_V", "V₁₂V₁₃V₂₃ = V₂₃V₁₂", pentagon_residual(v, n), th.tight);
    r.add(prefix + ".pentagon_V_hat", "V̂₁₂V̂₁₃V̂₂₃ = V̂₂₃V̂₁₂", pentagon_residual(v_hat, n), th.tight);

    OperatorSpan m_span(s.g.pi), mhat_span(d.basis);
    std::vector<CMatrix> m_prime = commutant(s.g.pi, n);
    std::vector<CMatrix> mhat_prime = commutant(d.basis, n);
    r.add(prefix + ".W_in_M_Mhat", "W ∈ M ⊗ M̂", detail::membership_residual(w, s.g.pi, mhat_span), th.loose);
    r.add(prefix + ".W_hat_in_Mhat_M", "Ŵ ∈ M̂ ⊗ M", detail::membership_residual(w_hat, d.basis, m_span), th.loose);
    r.add(prefix + ".V_in_Mhat_prime_M", "V ∈ M̂′ ⊗ M", detail::membership_residual(v, mhat_prime, m_span),
          th.loose);
    r.add(prefix + ".V_hat_in_M_prime_Mhat", "V̂ ∈ M′ ⊗ M̂",
          detail::membership_residual(v_hat, m_prime, mhat_span), th.loose);
    return r;
}

/// Two-path identities connecting the dual with G, N, I and the implementation
/// of τ, R, τ̂, R̂.
inline VerificationReport duality_theorem_suite(const QuantumGroupSide& s, const DualQuantumGroup& d,
                                                const Thresholds& th = {},
                                                const std::string& prefix = "duality") {
    VerificationReport r;
    const StarAlgebra& alg = s.qg.alg;
    const Index n = s.dim();
    const QuantumGroupSide& h = d.side;
    const AntilinearOp& J = s.md.J;
    const AntilinearOp& J_hat = h.md.J;
    const CMatrix& nabla = s.md.nabla;
    const CMatrix& nabla_hat = h.md.nabla;
    const CMatrix& w = s.W;
    const std::vector<double> times{0.5, 1.0};

    AntilinearOp t_hat_sharp = h.md.T.sharp();
    r.add(prefix + ".T_hat_sharp_is_G", "T̂* = G", (t_hat_sharp.mat - s.pg.G.mat).norm(), th.loose);
    r.add(prefix + ".nabla_hat_is_N_inverse", "∇̂ = N^{-1}", (nabla_hat - s.pg.N.inverse()).norm(), th.loose);
    r.add(prefix + ".J_hat_is_I", "Ĵ = I", (J_hat.mat - s.pg.I.mat).norm(), th.loose);

    CMatrix s_inv = s.a.S.inverse();
    double t_star = 0.0, jhoed = 0.0;
    for (Index k = 0; k < n; ++k) {
        CVector x = alg.basis(k);
        t_star += (t_hat_sharp.apply(s.g.vec(x)) - s.g.vec(alg.involute(s_inv * x))).squaredNorm();
        jhoed += (J_hat.apply(s.rw.gamma * x) - s.g.vec(alg.involute(s.a.R * x))).squaredNorm();
    }
    r.add(prefix + ".T_hat_sharp_formula", "T̂*Λ(x) = Λ(S^{-1}(x)*)", std::sqrt(t_star), th.tight);
    r.add(prefix + ".J_hat_Gamma", "ĴΓ(x) = Λ(R(x)*)", std::sqrt(jhoed), th.tight);
    cplx phase = std::pow(cplx(s.nu.nu), 0.25 * kI);
    r.add(prefix + ".J_hat_J_phase", "ĴJ = ν^{i/4}JĴ", (J_hat.compose(J) - phase * J.compose(J_hat)).norm(),
          th.tight);

    double impl_tau = 0.0, impl_r = 0.0, impl_tau_hat = 0.0, impl_r_hat = 0.0, w_tau = 0.0, factor = 0.0,
           on_lambda = 0.0;
    for (double t : times) {
        CMatrix u_hat = mat_power(nabla_hat, kI * t);
        CMatrix u = mat_power(nabla, kI * t);
        for (const auto& x : s.g.pi) impl_tau += (tau(s.pg.N, t, x) - u_hat * x * u_hat.adjoint()).squaredNorm();
        for (const auto& y : h.g.pi) impl_tau_hat += (tau(h.pg.N, t, y) - u * y * u.adjoint()).squaredNorm();
        CMatrix uw = kron(mat_power(s.pg.N, -kI * t), mat_power(h.pg.N, -kI * t));
        w_tau += (uw * w * uw.adjoint() - w).squaredNorm();
        CMatrix delta_it = mat_power(s.delta.delta_op, kI * t);
        factor += (u_hat - mat_power(s.P.P, kI * t) * J.conjugate_linear(delta_it)).squaredNorm();
        CMatrix tau_t = s.a.tau(t);
        CVector delta_mit = s.g.coords(mat_power(s.delta.delta_op, -kI * t));
        for (Index k = 0; k < n; ++k) {
            CVector x = alg.basis(k);
            on_lambda += (u_hat * s.g.vec(x) - s.g.vec(alg.multiply(tau_t * x, delta_mit))).squaredNorm();
        }
    }
    for (Index k = 0; k < n; ++k) {
        const CMatrix& x = s.g.pi[static_cast<std::size_t>(k)];
        impl_r += (s.g.pi_of(s.a.R.col(k)) - J_hat.conjugate_linear(x.adjoint())).squaredNorm();
        const CMatrix& y = h.g.pi[static_cast<std::size_t>(k)];
        impl_r_hat += (h.g.pi_of(h.a.R.col(k)) - J.conjugate_linear(y.adjoint())).squaredNorm();
    }
    r.add(prefix + ".implements_tau", "τ_t(x) = ∇̂^{it}x∇̂^{-it}", std::sqrt(impl_tau), th.loose);
    r.add(prefix + ".implements_R", "R(x) = Ĵx*Ĵ", std::sqrt(impl_r), th.loose);
    r.add(prefix + ".implements_tau_hat", "τ̂_t(x) = ∇^{it}x∇^{-it}", std::sqrt(impl_tau_hat), th.loose);
    r.add(prefix + ".implements_R_hat", "R̂(x) = Jx*J", std::sqrt(impl_r_hat), th.loose);
    r.add(prefix + ".nabla_hat_factorization", "∇̂^{it} = P^{it}Jδ^{it}J", std::sqrt(factor), th.loose);
    r.add(prefix + ".nabla_hat_on_Lambda", "∇̂^{it}Λ(a) = Λ(τ_t(a)δ^{-it})", std::sqrt(on_lambda), th.loose);

    // W = Σ_k π(e_k) ⊗ λ(ε_k) and λ(ε_k) is the k-th basis element of M̂.
    CMatrix rw = CMatrix::Zero(n * n, n * n);
    for (Index k = 0; k < n; ++k) rw += kron(s.g.pi_of(s.a.R.col(k)), h.g.pi_of(h.a.R.col(k)));
    r.add(prefix + ".W_R_invariant", "(R⊗R̂)(W) = W", (rw - w).norm(), th.loose);
    r.add(prefix + ".W_tau_invariant", "(τ_t⊗τ̂_t)(W) = W", std::sqrt(w_tau), th.loose);

    CMatrix nn = kron(nabla_hat, nabla);
    r.add(prefix + ".W_commutes_nabla", "W(∇̂⊗∇) = (∇̂⊗∇)W", (w * nn - nn * w).norm(), th.loose);
    AntilinearOp jj = kron(J_hat, J);
    r.add(prefix + ".W_J_hat_J", "W(Ĵ⊗J) = (Ĵ⊗J)W*", ((w * jj).mat - jj.after(w.adjoint()).mat).norm(), th.loose);
    CMatrix pn = kron(s.P.P, nabla), np = kron(nabla_hat, s.P.P);
    r.add(prefix + ".W_commutes_P", "W(P⊗∇) = (P⊗∇)W and W(∇̂⊗P) = (∇̂⊗P)W",
          std::max((w * pn - pn * w).norm(), (w * np - np * w).norm()), th.loose);
    return r;
}

/// The double dual rebuilt through the same pipeline and compared with the
/// original: algebra, comultiplication, Λ, φ, δ, Γ and W.
inline VerificationReport pontryagin_check(const QuantumGroupSide& s, const DualQuantumGroup& d,
                                           const Thresholds& th = {}, const Tolerance& tol = {},
                                           const std::string& prefix = "pontryagin") {
    VerificationReport r;
    DualQuantumGroup dd = build_dual(d.side, tol);
    const QuantumGroupSide& b = dd.side;
    const Index n = s.dim();
    r.add_bool(prefix + ".algebra", "the double dual algebra is M", subspace_equal(dd.basis, s.g.pi, tol));
    CMatrix t(n, n);
    for (Index k = 0; k < n; ++k) t.col(k) = b.g.coords(s.g.pi[static_cast<std::size_t>(k)]);
    r.add(prefix + ".comultiplication", "Δ̂̂ = Δ", (b.qg.comul * t - kron(t, t) * s.qg.comul).norm(), th.loose);
    r.add(prefix + ".lambda", "Λ̂̂ = Λ", (b.g.lambda * t - s.g.lambda).norm(), th.loose);
    r.add(prefix + ".phi", "φ̂̂ = φ", (t.transpose() * b.qg.phi.w - s.qg.phi.w).norm(), th.tight);
    r.add(prefix + ".delta", "δ̂̂ = δ", (b.delta.delta_op - s.delta.delta_op).norm(), th.loose);
    r.add(prefix + ".gamma", "Γ̂̂ = Γ", (b.rw.gamma * t - s.rw.gamma).norm(), th.loose);
    r.add(prefix + ".W", "the dual of the dual has multiplicative unitary W", (b.W - s.W).norm(), th.loose);
    return r;
}

/// Operators entering the commutation relations of the modular operators.
struct CommutationInputs {
    CMatrix nabla;            // ∇ for φ in (H, ι, Λ)
    CMatrix nabla_psi;        // ∇′ for ψ in (H, ι, Γ)
    CMatrix nabla_hat;        // ∇̂
    CMatrix nabla_hat_psi;    // ∇̂′
    AntilinearOp J;
    AntilinearOp J_hat;
    CMatrix P;
    CMatrix delta;
    CMatrix delta_hat;
    double nu = 1.0;

    /// Hats removed where present and added where absent, ν ↦ ν^{-1},
    /// δ ↦ δ̂, P unchanged.
    CommutationInputs swapped() const {
        return {nabla_hat, nabla_hat_psi, nabla, nabla_psi, J_hat, J, P, delta_hat, delta, 1.0 / nu};
    }
};

inline CommutationInputs commutation_inputs(const QuantumGroupSide& s, const DualQuantumGroup& d) {
    return {s.md.nabla, s.rw.nabla, d.side.md.nabla, d.side.rw.nabla, s.md.J, d.side.md.J, s.P.P,
            s.delta.delta_op, d.side.delta.delta_op, s.nu.nu};
}

/// At ν = 1 the twisted relations A^{it}B^{is} = ν^{ist}B^{is}A^{it} say that
/// log A and log B commute; J-conjugations are compared entrywise.
inline VerificationReport commutation_table(const CommutationInputs& in, double tol,
                                            const std::string& prefix = "commutation") {
    VerificationReport r;
    auto pass = [&](const CommutationInputs& c, const std::string& p) {
        CMatrix ln = mat_log(c.nabla), lnp = mat_log(c.nabla_psi), lnh = mat_log(c.nabla_hat),
                lnhp = mat_log(c.nabla_hat_psi), lp = mat_log(c.P), ld = mat_log(c.delta);
        auto comm = [](const CMatrix& a, const CMatrix& b) { return (a * b - b * a).norm(); };
        std::string nu_note = "ν = " + std::to_string(c.nu);
        double twist = std::abs(std::log(c.nu));
        r.add(p + ".com1", "∇̂^{it}∇^{is} = ν^{ist}∇^{is}∇̂^{it} and ∇̂′^{it}∇′^{is} = ν^{ist}∇′^{is}∇̂′^{it}",
              std::max({comm(lnh, ln), comm(lnhp, lnp), twist}), tol, nu_note);
        r.add(p + ".com2", "∇̂^{it}∇′^{is} = ν^{ist}∇′^{is}∇̂^{it} and ∇^{is}∇′^{it} = ∇′^{it}∇^{is}",
              std::max({comm(lnh, lnp), comm(ln, lnp), twist}), tol, nu_note);
        r.add(p + ".com3", "Ĵ∇Ĵ = ∇′, J∇J = ∇^{-1} and J∇′J = ∇′^{-1}",
              std::max({(c.J_hat.conjugate_linear(c.nabla) - c.nabla_psi).norm(),
                        (c.J.conjugate_linear(c.nabla) - c.nabla.inverse()).norm(),
                        (c.J.conjugate_linear(c.nabla_psi) - c.nabla_psi.inverse()).norm()}),
              tol);
        r.add(p + ".com4", "ĴPĴ = P^{-1} and ĴδĴ = δ^{-1}",
              std::max((c.J_hat.conjugate_linear(c.P) - c.P.inverse()).norm(),
                       (c.J_hat.conjugate_linear(c.delta) - c.delta.inverse()).norm()),
              tol);
        r.add(p + ".com5", "P^{is}∇^{it} = ∇^{it}P^{is} and P^{is}∇′^{it} = ∇′^{it}P^{is}",
              std::max(comm(lp, ln), comm(lp, lnp)), tol);
        r.add(p + ".com6", "P^{is}δ^{it} = δ^{it}P^{is}", comm(lp, ld), tol);
        r.add(p + ".com7", "∇^{is}δ^{it} = ν^{ist}δ^{it}∇^{is} and ∇′^{is}δ^{it} = ν^{ist}δ^{it}∇′^{is}",
              std::max({comm(ln, ld), comm(lnp, ld), twist}), tol, nu_note);
        r.add(p + ".com8", "∇̂^{is}δ^{it} = δ^{it}∇̂^{is} and ∇̂′^{is}δ^{it} = δ^{it}∇̂′^{is}",
              std::max(comm(lnh, ld), comm(lnhp, ld)), tol);
    };
    pass(in, prefix);
    pass(in.swapped(), prefix + ".swap");
    return r;
}

inline Index intersection_check(const QuantumGroupSide& s, const DualQuantumGroup& d, const Tolerance& tol = {}) {
    return intersection_dim(s.g.pi, d.basis, tol);
}

inline VerificationReport intersection_report(const QuantumGroupSide& s, const DualQuantumGroup& d,
                                              const std::string& prefix = "intersection") {
    VerificationReport r;
    Index k = intersection_check(s, d);
    r.add_bool(prefix + ".trivial", "M ∩ M̂ = ℂ", k == 1, "dimension " + std::to_string(k));
    return r;
}

}  // namespace vnqg
