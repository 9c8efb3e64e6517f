#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "vnqg/error.hpp"
#include "vnqg/gns_modular.hpp"
#include "vnqg/numlin.hpp"
#include "vnqg/qg_builders.hpp"
#include "vnqg/report.hpp"

namespace vnqg {

enum class AntipodeMap { S, R, Tau };

/// Scaling group τ_t(x) = N^{-it} x N^{it}, unitary antipode R(x) = I x* I
/// and antipode S = R τ_{-i/2}, all acting on algebra coordinates.
struct AntipodeData {
    GnsData gns;
    CMatrix N;
    AntilinearOp I;
    CMatrix R;  // coordinate matrix of R
    CMatrix S;  // coordinate matrix of S

    /// Coordinate matrix of τ_t.
    CMatrix tau(double t) const {
        CMatrix u = mat_power(N, -kI * t);
        CMatrix u_inv = u.adjoint();
        return gns.pullback([&](const CMatrix& x) { return CMatrix(u * x * u_inv); });
    }

    /// Coordinate matrix of the analytic continuation τ_{-i/2}: x ↦ N^{-1/2} x N^{1/2}.
    CMatrix tau_minus_half_i() const {
        CMatrix a = mat_power(N, -0.5), b = mat_power(N, 0.5);
        return gns.pullback([&](const CMatrix& x) { return CMatrix(a * x * b); });
    }

    CVector apply(AntipodeMap which, const CVector& x, double t = 0.0) const {
        switch (which) {
            case AntipodeMap::S: return S * x;
            case AntipodeMap::R: return R * x;
            case AntipodeMap::Tau: return tau(t) * x;
        }
        return x;
    }
};

inline AntipodeData antipode_data(const PolarG& pg, const GnsData& g) {
    AntipodeData a{g, pg.N, pg.I, {}, {}};
    a.R = g.pullback([&](const CMatrix& x) { return pg.I.conjugate_linear(x.adjoint()); });
    CMatrix nm = mat_power(pg.N, -0.5), np = mat_power(pg.N, 0.5);
    a.S = g.pullback([&](const CMatrix& x) { return pg.I.conjugate_linear(CMatrix(nm * x * np).adjoint()); });
    return a;
}

inline CVector apply_antipode(const AntipodeData& a, const CVector& x, AntipodeMap which, double t = 0.0) {
    return a.apply(which, x, t);
}

/// Residuals of the relations tying S, R and τ together.
inline VerificationReport antipode_check(const FiniteQuantumGroup& qg, const AntipodeData& a, double tol,
                                         const std::string& prefix = "antipode") {
    VerificationReport r;
    const StarAlgebra& alg = qg.alg;
    const Index n = alg.dim();
    const CMatrix id = identity(n);

    r.add(prefix + ".R_involutive", "R² = ι", (a.R * a.R - id).norm(), tol);
    double commute = 0.0;
    for (double t : {0.5, 1.0}) {
        CMatrix tt = a.tau(t);
        commute += (a.R * tt - tt * a.R).squaredNorm();
    }
    r.add(prefix + ".R_tau_commute", "R and τ commute", std::sqrt(commute), tol);
    CMatrix tm = a.tau_minus_half_i();
    r.add(prefix + ".S_polar", "S = Rτ_{-i/2} = τ_{-i/2}R",
          std::max((a.S - a.R * tm).norm(), (a.S - tm * a.R).norm()), tol);
    r.add(prefix + ".R_coproduct", "χ(R⊗R)Δ = ΔR",
          (flip(n) * kron(a.R, a.R) * qg.comul - qg.comul * a.R).norm(), tol);

    double anti = 0.0, star = 0.0, ss = 0.0;
    for (Index i = 0; i < n; ++i) {
        CVector ei = alg.basis(i);
        for (Index j = 0; j < n; ++j) {
            CVector ej = alg.basis(j);
            anti += (a.R * alg.multiply(ei, ej) - alg.multiply(a.R * ej, a.R * ei)).squaredNorm();
        }
        star += (a.R * alg.involute(ei) - alg.involute(a.R * ei)).squaredNorm();
        CVector z = alg.involute(a.S * alg.involute(ei));
        ss += (a.S * z - ei).squaredNorm();
    }
    r.add(prefix + ".R_antimultiplicative", "R(xy) = R(y)R(x)", std::sqrt(anti), tol);
    r.add(prefix + ".R_star", "R(x*) = R(x)*", std::sqrt(star), tol);
    r.add(prefix + ".S_star_involutive", "S(S(x*)*) = x", std::sqrt(ss), tol);
    r.add(prefix + ".S_unit", "S(1) = 1", (a.S * alg.unit() - alg.unit()).norm(), tol);

    double leave = 0.0;
    CMatrix u = mat_power(a.N, -kI * 0.5);
    for (const auto& p : a.gns.pi) {
        leave = std::max(leave, a.gns.span.distance(u * p * u.adjoint()));
        leave = std::max(leave, a.gns.span.distance(a.I.conjugate_linear(p.adjoint())));
    }
    r.add(prefix + ".preserves_M", "τ_t(M) = M and R(M) = M", leave, tol);

    CVector phi_r = a.R.transpose() * qg.phi.w;
    r.add(prefix + ".phi_R_right_invariant", "φR is right invariant",
          (right_invariance_system(alg, qg.comul) * phi_r).norm(), tol);
    return r;
}

/// Strong left invariance S((ι⊗φ)(Δ(a*)(1⊗b))) = (ι⊗φ)((1⊗a*)Δ(b)) and its
/// right counterpart S((ψ⊗ι)((a*⊗1)Δ(b))) = (ψ⊗ι)(Δ(a*)(b⊗1)), over all
/// basis pairs.
inline VerificationReport strong_invariance_check(const FiniteQuantumGroup& qg, const AntipodeData& a,
                                                  const Functional& psi, double tol,
                                                  const std::string& prefix = "strong_invariance") {
    VerificationReport r;
    const StarAlgebra& alg = qg.alg;
    const Index n = alg.dim();
    // q(j, b) = φ(e_j e_b)
    CMatrix q = weight_products(alg, qg.phi);
    CMatrix p = weight_products(alg, psi);
    double left = 0.0, right = 0.0;
    for (Index ai = 0; ai < n; ++ai) {
        CVector as = alg.involute(alg.basis(ai));
        CVector das = qg.comul * as;
        Eigen::Map<const CMatrix> das_t(das.data(), n, n);
        CVector phi_as = alg.left_matrix(as).transpose() * qg.phi.w;  // φ(a* e_j)
        CVector psi_as = alg.left_matrix(as).transpose() * psi.w;     // ψ(a* e_i)
        for (Index b = 0; b < n; ++b) {
            CVector db = qg.comul.col(b);
            Eigen::Map<const CMatrix> db_t(db.data(), n, n);
            CVector lhs = a.S * (das_t.transpose() * q.col(b));
            CVector rhs = db_t.transpose() * phi_as;
            left += (lhs - rhs).squaredNorm();
            CVector lhs_r = a.S * (db_t * psi_as);
            CVector rhs_r = weighted_slice(das, p, b);
            right += (lhs_r - rhs_r).squaredNorm();
        }
    }
    r.add(prefix + ".left", "S((ι⊗φ)(Δ(a*)(1⊗b))) = (ι⊗φ)((1⊗a*)Δ(b))", std::sqrt(left), tol);
    r.add(prefix + ".right", "S((ψ⊗ι)((a*⊗1)Δ(b))) = (ψ⊗ι)(Δ(a*)(b⊗1))", std::sqrt(right), tol);
    return r;
}

struct NuFit {
    double nu = 1.0;
    double residual_t1 = 0.0;
    double residual_t2 = 0.0;
};

/// ν from φτ_1 = ν^{-1}φ, cross-validated by φτ_2 = ν^{-2}φ.
inline NuFit compute_nu(const Functional& phi, const AntipodeData& a, double tol = 1e-9) {
    const double scale = std::max(1.0, phi.w.norm());
    CVector f1 = a.tau(1.0).transpose() * phi.w;
    cplx c = phi.w.dot(f1) / phi.w.squaredNorm();
    NuFit out;
    out.residual_t1 = (f1 - c * phi.w).norm() / scale;
    if (!(out.residual_t1 <= tol) || !(std::abs(c.imag()) <= tol) || !(c.real() > 0.0))
        throw Error(ErrorKind::Inconsistent, "φτ_1 is not a positive multiple of φ, residual " +
                                                 std::to_string(out.residual_t1));
    out.nu = 1.0 / c.real();
    CVector f2 = a.tau(2.0).transpose() * phi.w;
    out.residual_t2 = (f2 - std::pow(out.nu, -2.0) * phi.w).norm() / scale;
    if (!(out.residual_t2 <= tol))
        throw Error(ErrorKind::Inconsistent, "φτ_2 ≠ ν^{-2}φ, residual " + std::to_string(out.residual_t2));
    return out;
}

/// Adopts ψ := φR after checking that it is a positive multiple of the
/// solver's right Haar weight.
inline Functional adopt_right_weight(const Functional& phi, const Functional& solver_psi,
                                     const AntipodeData& a, double tol = 1e-9) {
    Functional psi{a.R.transpose() * phi.w};
    cplx c = psi.w.dot(solver_psi.w) / psi.w.squaredNorm();
    double res = (solver_psi.w - c * psi.w).norm() / std::max(1.0, solver_psi.w.norm());
    if (!(res <= tol) || !(std::abs(c.imag()) <= tol) || !(c.real() > 0.0))
        throw Error(ErrorKind::ValidationFailed,
                    "φR is not a positive multiple of the right Haar weight, residual " + std::to_string(res));
    return psi;
}

struct DeltaData {
    CVector delta;      // algebra coordinates
    CMatrix delta_op;   // π(δ)
    CVector sqrt_delta; // algebra coordinates of δ^{1/2}
    double commutator = 0.0;
    double psi_formula = 0.0;
};

/// Modular element δ = D_φ^{-1} D_ψ from the trace densities on π(M).
inline DeltaData compute_delta(const GnsData& g, const Functional& phi, const Functional& psi,
                               double tol = 1e-9, const Tolerance& numtol = {}) {
    CMatrix d_phi = density_wrt_trace(g.pi, phi.w, tol);
    CMatrix d_psi = density_wrt_trace(g.pi, psi.w, tol);
    DeltaData out;
    out.delta_op = d_phi.inverse() * d_psi;
    out.commutator = (d_phi * out.delta_op - out.delta_op * d_phi).norm();
    if (!(out.commutator <= tol * std::max(1.0, out.delta_op.norm())))
        throw Error(ErrorKind::ValidationFailed, "[D_φ, δ] ≠ 0, residual " + std::to_string(out.commutator));
    if (!is_positive_definite(out.delta_op, numtol))
        throw Error(ErrorKind::ValidationFailed, "δ is not strictly positive");
    out.delta_op = 0.5 * (out.delta_op + out.delta_op.adjoint());
    CMatrix half = mat_power(out.delta_op, 0.5);
    try {
        out.delta = g.coords(out.delta_op, tol);
        out.sqrt_delta = g.coords(half, tol);
    } catch (const Error&) {
        throw Error(ErrorKind::ValidationFailed, "δ does not lie in M");
    }
    double res = 0.0;
    for (Index k = 0; k < g.dim(); ++k) {
        CMatrix x = half * g.pi[static_cast<std::size_t>(k)] * half;
        res += std::norm(psi.w(k) - phi(g.coords(x, tol)));
    }
    out.psi_formula = std::sqrt(res);
    if (!(out.psi_formula <= tol))
        throw Error(ErrorKind::ValidationFailed, "ψ(x) ≠ φ(δ^{1/2} x δ^{1/2}), residual " +
                                                     std::to_string(out.psi_formula));
    return out;
}

/// GNS data (H, ι, Γ) of ψ with Γ(x) = Λ(x δ^{1/2}).
struct RightWeightData {
    CMatrix gamma;
    CMatrix gamma_inv;
    AntilinearOp T;
    CMatrix nabla;  // ∇′
    AntilinearOp J;  // ν^{i/4} J

    CMatrix sigma_op(double t, const CMatrix& x) const {
        CMatrix u = mat_power(nabla, kI * t);
        return u * x * u.adjoint();
    }
};

inline RightWeightData right_weight_gns(const StarAlgebra& alg, const GnsData& g, const ModularData& md,
                                        const DeltaData& d, double nu, double tol = 1e-9,
                                        const Tolerance& numtol = {}) {
    RightWeightData rw;
    rw.gamma = g.lambda * alg.right_matrix(d.sqrt_delta);
    rw.gamma_inv = rw.gamma.inverse();
    rw.T = AntilinearOp{rw.gamma * alg.star() * rw.gamma_inv.conjugate()};
    AntilinearPolar p = antilinear_polar(rw.T, numtol);
    rw.nabla = p.n;
    rw.J = p.i;
    AntilinearOp expected = md.J.scaled(std::pow(cplx(nu), 0.25 * kI));
    double phase = (rw.J.mat - expected.mat).norm();
    if (!(phase <= tol))
        throw Error(ErrorKind::PhaseMismatch, "modular conjugation of ψ differs from ν^{i/4}J by " +
                                                  std::to_string(phase));
    return rw;
}

/// Coordinate matrix of the modular group x ↦ ∇^{it} x ∇^{-it}.
inline CMatrix modular_group(const GnsData& g, const CMatrix& nabla, double t) {
    CMatrix u = mat_power(nabla, kI * t);
    CMatrix u_inv = u.adjoint();
    return g.pullback([&](const CMatrix& x) { return CMatrix(u * x * u_inv); });
}

/// Identities of the modular element, the relative invariance of the Haar
/// weights and the commutation relations of τ, σ, σ′.
inline VerificationReport delta_identity_suite(const FiniteQuantumGroup& qg, const GnsData& g,
                                               const ModularData& md, const AntipodeData& a,
                                               const DeltaData& d, const RightWeightData& rw,
                                               const Functional& psi, double nu, double tol,
                                               const std::string& prefix = "delta") {
    VerificationReport r;
    const StarAlgebra& alg = qg.alg;
    const Functional& phi = qg.phi;
    const Index n = alg.dim();
    const std::vector<double> times{0.5, 1.0};

    r.add(prefix + ".comultiplicative", "Δ(δ) = δ⊗δ", (qg.comul * d.delta - kron_vec(d.delta, d.delta)).norm(), tol);
    CVector delta_inv = g.coords(d.delta_op.inverse());
    r.add(prefix + ".R_inverts", "R(δ) = δ^{-1}", (a.R * d.delta - delta_inv).norm(), tol);
    r.add(prefix + ".psi_formula", "ψ(x) = φ(δ^{1/2} x δ^{1/2})", d.psi_formula, tol);
    r.add(prefix + ".commutes_with_D_phi", "[D_φ, δ] = 0", d.commutator, tol);

    double tau_fix = 0.0, sigma_scale = 0.0, phi_sp = 0.0, psi_s = 0.0, psi_t = 0.0, sp_via_r = 0.0,
           groups_commute = 0.0, eq4 = 0.0, nabla_p = 0.0;
    for (double t : times) {
        CMatrix tau_t = a.tau(t), tau_mt = a.tau(-t);
        CMatrix sig = modular_group(g, md.nabla, t), sig_m = modular_group(g, md.nabla, -t);
        CMatrix sp = modular_group(g, rw.nabla, t), sp_m = modular_group(g, rw.nabla, -t);
        tau_fix += (tau_t * d.delta - d.delta).squaredNorm();
        sigma_scale += (sig * d.delta - std::pow(nu, t) * d.delta).squaredNorm();
        phi_sp += (sp.transpose() * phi.w - std::pow(nu, t) * phi.w).squaredNorm();
        psi_s += (sig.transpose() * psi.w - std::pow(nu, -t) * psi.w).squaredNorm();
        psi_t += (tau_t.transpose() * psi.w - std::pow(nu, -t) * psi.w).squaredNorm();
        sp_via_r += (sp - a.R * sig_m * a.R).squaredNorm();
        CMatrix tau_s = a.tau(0.3), sig_s = modular_group(g, md.nabla, 0.3);
        groups_commute += (tau_s * sig - sig * tau_s).squaredNorm() + (tau_s * sp - sp * tau_s).squaredNorm() +
                          (sig_s * sp - sp * sig_s).squaredNorm();
        const CMatrix& D = qg.comul;
        eq4 += (D * sig - kron(tau_t, sig) * D).squaredNorm();
        eq4 += (D * sp - kron(sp, tau_mt) * D).squaredNorm();
        eq4 += (D * tau_t - kron(tau_t, tau_t) * D).squaredNorm();
        eq4 += (D * tau_t - kron(sig, sp_m) * D).squaredNorm();
        CMatrix u = mat_power(rw.nabla, kI * t);
        for (Index k = 0; k < n; ++k) {
            CVector x = alg.basis(k);
            nabla_p += (u * g.vec(x) - std::pow(nu, -t / 2.0) * g.vec(sp * x)).squaredNorm();
        }
    }
    r.add(prefix + ".tau_invariant", "τ_t(δ) = δ", std::sqrt(tau_fix), tol);
    r.add(prefix + ".sigma_scaling", "σ_t(δ) = ν^t δ", std::sqrt(sigma_scale), tol);
    r.add("weights.phi_sigma_prime", "φσ′_t = ν^t φ", std::sqrt(phi_sp), tol);
    r.add("weights.psi_sigma", "ψσ_t = ν^{-t} ψ", std::sqrt(psi_s), tol);
    r.add("weights.psi_tau", "ψτ_t = ν^{-t} ψ", std::sqrt(psi_t), tol);
    r.add("weights.sigma_prime_via_R", "σ′_t = Rσ_{-t}R", std::sqrt(sp_via_r), tol);
    r.add("weights.groups_commute", "τ, σ and σ′ commute pairwise", std::sqrt(groups_commute), tol);
    r.add("weights.eq4", "Δσ_t = (τ_t⊗σ_t)Δ, Δσ′_t = (σ′_t⊗τ_{-t})Δ, Δτ_t = (τ_t⊗τ_t)Δ = (σ_t⊗σ′_{-t})Δ",
          std::sqrt(eq4), tol);

    CMatrix gg = rw.gamma.adjoint() * rw.gamma;
    r.add("right_gns.inner_product", "⟨Γ(x), Γ(y)⟩ = ψ(y*x)", (gg - gram(alg, psi)).norm(), tol);
    double tdef = 0.0;
    for (Index k = 0; k < n; ++k) {
        CVector x = alg.basis(k);
        tdef += (rw.T.apply(rw.gamma * x) - rw.gamma * alg.involute(x)).squaredNorm();
    }
    r.add("right_gns.T_basis", "T′Γ(x) = Γ(x*)", std::sqrt(tdef), tol);
    r.add("right_gns.J_phase", "ν^{i/4}J is the modular conjugation of ψ",
          (rw.J.mat - md.J.scaled(std::pow(cplx(nu), 0.25 * kI)).mat).norm(), tol);
    r.add("right_gns.nabla_prime", "∇′^{it}Λ(x) = ν^{-t/2}Λ(σ′_t(x))", std::sqrt(nabla_p), tol);
    return r;
}

/// Relations of the operator P: P^{it}Λ(x) = ν^{t/2}Λ(τ_t(x)) and
/// τ_t(x) = P^{it} x P^{-it}.
inline VerificationReport p_suite(const GnsData& g, const CMatrix& N, const OperatorP& p, double nu, double tol,
                                  const std::string& prefix = "P") {
    VerificationReport r;
    double rel = 0.0, impl = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
        rel += std::pow(p_relation_residual(p, N, g, nu, t), 2);
        CMatrix pit = mat_power(p.P, kI * t);
        for (const auto& x : g.pi) impl += (tau(N, t, x) - pit * x * pit.adjoint()).squaredNorm();
    }
    r.add(prefix + ".defining_relation", "P^{it}Λ(x) = ν^{t/2}Λ(τ_t(x))", std::sqrt(rel), tol);
    r.add(prefix + ".implements_tau", "τ_t(x) = P^{it} x P^{-it}", std::sqrt(impl), tol);
    r.add_bool(prefix + ".positive", "P is strictly positive", is_positive_definite(p.P));
    return r;
}

}  // namespace vnqg
