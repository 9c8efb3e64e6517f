#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vnqg/error.hpp"
#include "vnqg/numlin.hpp"
#include "vnqg/qg_builders.hpp"
#include "vnqg/report.hpp"
#include "vnqg/star_algebra.hpp"

namespace vnqg {

/// GNS realization of a faithful positive functional: H = ℂⁿ in the
/// orthonormal basis given by the Cholesky factor of the Gram matrix.
struct GnsData {
    CMatrix gram;
    CMatrix lambda;      // algebra coordinates → H
    CMatrix lambda_inv;  // H → algebra coordinates
    std::vector<CMatrix> pi;  // π(e_k) on H
    OperatorSpan span;        // span π(M) for pulling operators back

    Index dim() const { return lambda.rows(); }

    CVector vec(const CVector& x) const { return lambda * x; }

    CMatrix pi_of(const CVector& x) const { return span.combine(x); }

    /// Algebra coordinates of an operator in π(M).
    CVector coords(const CMatrix& x, double threshold = 1e-9) const {
        return span.coords(x, threshold);
    }

    /// Matrix of x ↦ coords(f(π(x))) for a map f on operators.
    template <class F>
    CMatrix pullback(F&& f, double threshold = 1e-9) const {
        const Index n = dim();
        CMatrix out(n, n);
        for (Index k = 0; k < n; ++k) out.col(k) = coords(f(pi[static_cast<std::size_t>(k)]), threshold);
        return out;
    }
};

inline GnsData build_gns(const StarAlgebra& alg, const Functional& omega, const Tolerance& tol = {}) {
    GnsData g;
    g.gram = gram(alg, omega);
    if (!is_hermitian(g.gram, tol))
        throw Error(ErrorKind::GramNotPD, "Gram matrix is not Hermitian");
    CMatrix h = 0.5 * (g.gram + g.gram.adjoint());
    HermEig e = herm_eig(h, tol);
    if (e.values.minCoeff() <= tol.effective(h.rows()) * std::max(1.0, h.norm()))
        throw Error(ErrorKind::GramNotPD, "Gram matrix has minimum eigenvalue " +
                                              std::to_string(e.values.minCoeff()));
    Eigen::LLT<CMatrix> llt(h);
    if (llt.info() != Eigen::Success) throw Error(ErrorKind::GramNotPD, "Cholesky factorization failed");
    // G = L Lᴴ, so ⟨Λx, Λy⟩ = yᴴ G x with Λ = Lᴴ.
    g.lambda = llt.matrixU();
    g.lambda_inv = g.lambda.inverse();
    for (Index k = 0; k < alg.dim(); ++k) g.pi.push_back(g.lambda * alg.lmul(k) * g.lambda_inv);
    g.span = OperatorSpan(g.pi, tol);
    return g;
}

inline GnsData build_gns(const FiniteQuantumGroup& qg, const Tolerance& tol = {}) {
    return build_gns(qg.alg, qg.phi, tol);
}

/// Residuals of the GNS invariants: inner product, multiplicativity, unit,
/// *-preservation.
inline VerificationReport gns_check(const StarAlgebra& alg, const Functional& omega,
                                    const GnsData& g, double tol, const std::string& prefix = "gns") {
    VerificationReport r;
    r.add(prefix + ".inner_product", "⟨Λ(x), Λ(y)⟩ = φ(y* x)",
          (g.lambda.adjoint() * g.lambda - gram(alg, omega)).norm(), tol);
    double mult = 0.0, star = 0.0;
    for (Index i = 0; i < alg.dim(); ++i) {
        mult += (g.lambda * alg.lmul(i) - g.pi[static_cast<std::size_t>(i)] * g.lambda).squaredNorm();
        star += (g.pi_of(alg.involute(alg.basis(i))) - g.pi[static_cast<std::size_t>(i)].adjoint()).squaredNorm();
    }
    r.add(prefix + ".module", "Λ(xy) = π(x)Λ(y)", std::sqrt(mult), tol);
    r.add(prefix + ".star", "π(x*) = π(x)*", std::sqrt(star), tol);
    r.add(prefix + ".unit", "π(1) = 1", (g.pi_of(alg.unit()) - identity(g.dim())).norm(), tol);
    return r;
}

struct ModularData {
    AntilinearOp T;  // TΛ(x) = Λ(x*)
    CMatrix nabla;
    AntilinearOp J;

    CMatrix nabla_it(double t) const { return mat_power(nabla, kI * t); }
};

/// Tomita data from the antilinear map Λ(x) ↦ Λ(x*).
inline ModularData modular_data(const StarAlgebra& alg, const GnsData& g, const Tolerance& tol = {}) {
    AntilinearOp t{g.lambda * alg.star() * g.lambda_inv.conjugate()};
    AntilinearPolar p = antilinear_polar(t, tol);
    return {t, p.n, p.i};
}

inline VerificationReport modular_check(const StarAlgebra& alg, const GnsData& g,
                                        const ModularData& md, double tol,
                                        const std::string& prefix = "modular") {
    VerificationReport r;
    const Index n = g.dim();
    double tdef = 0.0;
    for (Index k = 0; k < alg.dim(); ++k) {
        CVector x = alg.basis(k);
        tdef += (md.T.apply(g.vec(x)) - g.vec(alg.involute(x))).squaredNorm();
    }
    r.add(prefix + ".T_basis", "T Λ(x) = Λ(x*)", std::sqrt(tdef), tol);
    r.add(prefix + ".polar", "T = J ∇^{1/2}",
          (md.J.after(mat_power(md.nabla, 0.5)).mat - md.T.mat).norm(), tol);
    r.add(prefix + ".J_involutive", "J² = 1", (md.J.compose(md.J) - identity(n)).norm(), tol);
    r.add(prefix + ".J_antiunitary", "J*J = 1", unitarity_defect(md.J.mat), tol);
    r.add(prefix + ".J_inverts_nabla", "J ∇ J = ∇^{-1}",
          (md.J.conjugate_linear(md.nabla) - md.nabla.inverse()).norm(), tol);
    CMatrix u = md.nabla_it(0.7);
    std::vector<CMatrix> rotated, reflected;
    for (const auto& p : g.pi) {
        rotated.push_back(u * p * u.adjoint());
        reflected.push_back(md.J.conjugate_linear(p));
    }
    r.add(prefix + ".sigma_preserves_M", "∇^{it} M ∇^{-it} = M",
          subspace_distance(rotated, g.pi), tol);
    r.add(prefix + ".J_M_J_commutant", "J M J = M'",
          subspace_distance(reflected, commutant(g.pi, n)), tol);
    return r;
}

/// Coordinates of Δ(e_b)(e_a ⊗ 1) as column a·n + b.
inline CMatrix w_defining_matrix(const StarAlgebra& alg, const CMatrix& comul) {
    const Index n = alg.dim();
    CMatrix q = CMatrix::Zero(n * n, n * n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            CVector col = CVector::Zero(n * n);
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j) {
                    cplx d = comul(i * n + j, b);
                    if (d == cplx(0.0)) continue;
                    for (Index k = 0; k < n; ++k) col(k * n + j) += d * alg.lmul(i)(k, a);
                }
            q.col(a * n + b) = col;
        }
    return q;
}

/// Coordinates of Δ(e_a)(1 ⊗ e_b) as column a·n + b.
inline CMatrix v_defining_matrix(const StarAlgebra& alg, const CMatrix& comul) {
    const Index n = alg.dim();
    CMatrix q = CMatrix::Zero(n * n, n * n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            CVector col = CVector::Zero(n * n);
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < n; ++j) {
                    cplx d = comul(i * n + j, a);
                    if (d == cplx(0.0)) continue;
                    for (Index k = 0; k < n; ++k) col(i * n + k) += d * alg.lmul(j)(k, b);
                }
            q.col(a * n + b) = col;
        }
    return q;
}

/// W from W*(Λ(x) ⊗ Λ(y)) = (Λ ⊗ Λ)(Δ(y)(x ⊗ 1)).
inline CMatrix build_W(const StarAlgebra& alg, const CMatrix& comul, const GnsData& g,
                       double unitarity_tol = 1e-8) {
    CMatrix ll = kron(g.lambda, g.lambda);
    CMatrix ll_inv = kron(g.lambda_inv, g.lambda_inv);
    CMatrix w_star = ll * w_defining_matrix(alg, comul) * ll_inv;
    CMatrix w = w_star.adjoint();
    double defect = unitarity_defect(w);
    if (!(defect <= unitarity_tol))
        throw Error(ErrorKind::NotUnitary, "W is not unitary, defect " + std::to_string(defect));
    return w;
}

inline CMatrix build_W(const FiniteQuantumGroup& qg, const GnsData& g) {
    return build_W(qg.alg, qg.comul, g);
}

/// V from V(Γ(x) ⊗ Γ(y)) = (Γ ⊗ Γ)(Δ(x)(1 ⊗ y)), Γ a coordinate map for ψ.
inline CMatrix build_V(const StarAlgebra& alg, const CMatrix& comul, const CMatrix& gamma,
                       double unitarity_tol = 1e-8) {
    CMatrix gg = kron(gamma, gamma);
    CMatrix v = gg * v_defining_matrix(alg, comul) * gg.inverse();
    double defect = unitarity_defect(v);
    if (!(defect <= unitarity_tol))
        throw Error(ErrorKind::NotUnitary, "V is not unitary, defect " + std::to_string(defect));
    return v;
}

/// Operator (π ⊗ π)(X) for X in algebra tensor coordinates.
inline CMatrix pi_tensor(const GnsData& g, const CVector& x) {
    const Index n = static_cast<Index>(g.pi.size());
    const Index h = g.dim();
    CMatrix out = CMatrix::Zero(h * h, h * h);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            cplx c = x(i * n + j);
            if (c != cplx(0.0)) out += c * kron(g.pi[static_cast<std::size_t>(i)], g.pi[static_cast<std::size_t>(j)]);
        }
    return out;
}

/// Decomposition X = Σ_i π(e_i) ⊗ C_i of an operator whose first leg lies in
/// π(M); returns the C_i and the fit residual.
inline std::pair<std::vector<CMatrix>, double> first_leg_slices(const CMatrix& x,
                                                                const std::vector<CMatrix>& first,
                                                                Index n2) {
    const Index n1 = first.front().rows();
    const Index m = static_cast<Index>(first.size());
    CMatrix b = stack_vecs(first);  // n1² × m
    Eigen::ColPivHouseholderQR<CMatrix> qr(b);
    // Row (r, s) of the right-hand side collects the block entries X_{pq}(r, s).
    CMatrix rhs(n1 * n1, n2 * n2);
    for (Index q = 0; q < n1; ++q)
        for (Index p = 0; p < n1; ++p) {
            CMatrix blk = x.block(p * n2, q * n2, n2, n2);
            rhs.row(q * n1 + p) = Eigen::Map<const CVector>(blk.data(), n2 * n2).transpose();
        }
    CMatrix c = qr.solve(rhs);  // m × n2²
    double res = (b * c - rhs).norm();
    std::vector<CMatrix> out;
    for (Index i = 0; i < m; ++i) {
        CVector row = c.row(i).transpose();
        out.push_back(unvec(row, n2));
    }
    return {out, res};
}

/// Antilinear G with G Λ((ψ⊗ι)(Δ(x*)(y⊗1))) = Λ((ψ⊗ι)(Δ(y*)(x⊗1))) and its
/// polar decomposition G = I N^{1/2}.
struct PolarG {
    AntilinearOp G;
    CMatrix N;
    AntilinearOp I;
    Index span_rank = 0;
    double consistency = 0.0;
};

/// p(i, b) = ψ(e_i e_b).
inline CMatrix weight_products(const StarAlgebra& alg, const Functional& psi) {
    const Index n = alg.dim();
    CMatrix p(n, n);
    for (Index i = 0; i < n; ++i) p.row(i) = psi.w.transpose() * alg.lmul(i);
    return p;
}

/// (ψ⊗ι)(X(e_b⊗1)) for X in tensor coordinates, with p from weight_products.
inline CVector weighted_slice(const CVector& x, const CMatrix& p, Index b) {
    const Index n = p.rows();
    return Eigen::Map<const CMatrix>(x.data(), n, n) * p.col(b);
}

/// u_{a,b} = Λ((ψ⊗ι)(Δ(e_a*)(e_b⊗1))) as column a·n + b.
inline CMatrix g_vectors(const StarAlgebra& alg, const CMatrix& comul, const GnsData& g,
                         const Functional& psi) {
    const Index n = alg.dim();
    CMatrix p = weight_products(alg, psi);
    CMatrix u(n, n * n);
    for (Index a = 0; a < n; ++a) {
        CVector dy = comul * alg.involute(alg.basis(a));
        for (Index b = 0; b < n; ++b) u.col(a * n + b) = g.lambda * weighted_slice(dy, p, b);
    }
    return u;
}

inline PolarG build_G(const StarAlgebra& alg, const CMatrix& comul, const GnsData& g,
                      const Functional& psi, double consistency_tol = 1e-9,
                      const Tolerance& tol = {}) {
    const Index n = alg.dim();
    CMatrix u = g_vectors(alg, comul, g, psi);
    PolarG out;
    out.span_rank = rank(u, tol);
    if (out.span_rank < n)
        throw Error(ErrorKind::SpanDeficient, "vectors u(x, y) span a " +
                                                  std::to_string(out.span_rank) + "-dimensional subspace");
    CMatrix v(n, n * n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) v.col(a * n + b) = u.col(b * n + a);
    // G u = v with G antilinear: A conj(U) = V, solved as conj(U)ᵀ Aᵀ = Vᵀ.
    CMatrix ut = u.conjugate().transpose();
    CMatrix at = ut.colPivHouseholderQr().solve(CMatrix(v.transpose()));
    out.G = AntilinearOp{at.transpose()};
    out.consistency = (out.G.apply_columns(u) - v).norm() / std::max(1.0, v.norm());
    if (!(out.consistency <= consistency_tol))
        throw Error(ErrorKind::Inconsistent, "G is not well defined, residual " +
                                                 std::to_string(out.consistency));
    AntilinearPolar p = antilinear_polar(out.G, tol);
    out.N = p.n;
    out.I = p.i;
    return out;
}

/// Generator of x ↦ x log N − log N x on π(M), in algebra coordinates.
inline CMatrix scaling_generator_coords(const GnsData& g, const CMatrix& log_n) {
    return g.pullback([&](const CMatrix& x) { return CMatrix(x * log_n - log_n * x); });
}

struct OperatorP {
    CMatrix P;
    CMatrix log_P;
};

/// P with P^{it} Λ(x) = ν^{t/2} Λ(τ_t(x)): log P = K − (i/2) log ν, where K
/// transports x ↦ x log N − log N x to H.
inline OperatorP build_P(const CMatrix& N, const GnsData& g, double nu, const Tolerance& tol = {}) {
    CMatrix log_n = mat_log(N, tol);
    CMatrix k = g.lambda * scaling_generator_coords(g, log_n) * g.lambda_inv;
    CMatrix log_p = k - kI * (0.5 * std::log(nu)) * identity(g.dim());
    if (!is_hermitian(log_p, tol))
        throw Error(ErrorKind::NotHermitian, "generator of P is not Hermitian, defect " +
                                                 std::to_string((log_p - log_p.adjoint()).norm()));
    log_p = 0.5 * (log_p + log_p.adjoint());
    return {mat_exp(log_p, tol), log_p};
}

/// τ_t(X) = N^{-it} X N^{it}.
inline CMatrix tau(const CMatrix& N, double t, const CMatrix& x) {
    CMatrix u = mat_power(N, -kI * t);
    return u * x * u.adjoint();
}

inline double p_relation_residual(const OperatorP& p, const CMatrix& N, const GnsData& g, double nu,
                                  double t) {
    CMatrix pit = mat_power(p.P, kI * t);
    double res = 0.0;
    for (Index k = 0; k < g.dim(); ++k) {
        CVector x = CVector::Unit(g.dim(), k);
        CVector tx = g.coords(tau(N, t, g.pi[static_cast<std::size_t>(k)]));
        res += (pit * g.vec(x) - std::pow(nu, t / 2.0) * g.vec(tx)).squaredNorm();
    }
    return std::sqrt(res);
}

/// Residuals of the polar data of G.
inline VerificationReport polar_check(const PolarG& pg, double tol, const std::string& prefix = "polar") {
    VerificationReport r;
    const Index n = pg.N.rows();
    r.add(prefix + ".G_involutive", "G is involutive", (pg.G.compose(pg.G) - identity(n)).norm(), tol);
    r.add(prefix + ".G_consistent", "G u(x, y) = u(y, x) on all basis pairs", pg.consistency, tol);
    r.add(prefix + ".decomposition", "G = I N^{1/2}",
          (pg.I.after(mat_power(pg.N, 0.5)).mat - pg.G.mat).norm(), tol);
    r.add(prefix + ".I_self_adjoint", "I = I*", (pg.I.sharp().mat - pg.I.mat).norm(), tol);
    r.add(prefix + ".I_involutive", "I² = 1", (pg.I.compose(pg.I) - identity(n)).norm(), tol);
    r.add(prefix + ".I_inverts_N", "I N I = N^{-1}",
          (pg.I.conjugate_linear(pg.N) - pg.N.inverse()).norm(), tol);
    return r;
}

/// Relations satisfied by W on the Hilbert space level.
inline VerificationReport w_structure_suite(const StarAlgebra& alg, const CMatrix& comul,
                                            const GnsData& g, const CMatrix& w,
                                            const ModularData& md, const PolarG& pg,
                                            const Functional& psi, double tol,
                                            const std::string& prefix = "w") {
    VerificationReport r;
    const Index n = g.dim();
    const CMatrix id = identity(n);
    const CMatrix ll = kron(g.lambda, g.lambda);
    const CMatrix q = w_defining_matrix(alg, comul);

    r.add(prefix + ".unitary", "W*W = WW* = 1", unitarity_defect(w), tol);
    r.add(prefix + ".pentagon", "W₁₂W₁₃W₂₃ = W₂₃W₁₂", pentagon_residual(w, n), tol);
    r.add(prefix + ".defining_relation", "W*(Λ(x)⊗Λ(y)) = (Λ⊗Λ)(Δ(y)(x⊗1))",
          (w.adjoint() * ll - ll * q).norm(), tol);

    CMatrix resolved = (ll.transpose()).colPivHouseholderQr().solve(CMatrix((ll * q).transpose())).transpose();
    r.add(prefix + ".uniqueness", "the defining relation determines W*", (resolved - w.adjoint()).norm(), tol);

    CMatrix gram2 = kron(g.gram, g.gram);
    CMatrix image = ll * q;
    r.add(prefix + ".isometry", "⟨(Λ⊗Λ)(Δ(y₁)(x₁⊗1)), (Λ⊗Λ)(Δ(y₂)(x₂⊗1))⟩ = ⟨Λ(x₁)⊗Λ(y₁), Λ(x₂)⊗Λ(y₂)⟩",
          (image.adjoint() * image - gram2).norm(), tol);

    double implements = 0.0;
    for (Index k = 0; k < n; ++k) {
        CMatrix lhs = w.adjoint() * kron(id, g.pi[static_cast<std::size_t>(k)]) * w;
        implements += (lhs - pi_tensor(g, comul.col(k))).squaredNorm();
    }
    r.add(prefix + ".implements_comultiplication", "Δ(x) = W*(1⊗x)W", std::sqrt(implements), tol);

    auto [slices, first_leg] = first_leg_slices(w, g.pi, n);
    r.add(prefix + ".first_leg_in_M", "W ∈ M ⊗ B(H)", first_leg, tol);

    double slice = 0.0;
    for (Index k = 0; k < n; ++k) {
        CMatrix d = CMatrix::Zero(n, n);
        d(k, (k + 1) % n) = 1.0;
        d(k, k) = 0.5;
        CMatrix lhs_op = slice_first(w.adjoint(), d, n, n);
        Functional omega{CVector(n)};
        for (Index i = 0; i < n; ++i) omega.w(i) = (d * g.pi[static_cast<std::size_t>(i)]).trace();
        for (Index x = 0; x < n; ++x) {
            CVector rhs = g.vec(slice_left(comul.col(x), omega));
            slice += (lhs_op * g.vec(alg.basis(x)) - rhs).squaredNorm();
        }
    }
    r.add(prefix + ".slice", "(ω⊗ι)(W*)Λ(x) = Λ((ω⊗ι)Δ(x))", std::sqrt(slice), tol);

    AntilinearOp ij = kron(pg.I, md.J);
    r.add(prefix + ".eq5", "(I⊗J)W = W*(I⊗J)",
          (ij.after(w).mat - (w.adjoint() * ij).mat).norm(), tol);
    CMatrix nn = kron(pg.N.inverse(), md.nabla);
    r.add(prefix + ".eq6", "(N^{-1}⊗∇)W = W(N^{-1}⊗∇)", (nn * w - w * nn).norm(), tol);

    CMatrix span1(n, n * n);
    for (Index k = 0; k < n; ++k) {
        Functional omega{CVector::Unit(n, k)};
        for (Index x = 0; x < n; ++x) span1.col(k * n + x) = g.vec(slice_left(comul.col(x), omega));
    }
    Index rank1 = rank(span1);
    r.add_bool(prefix + ".eq1_spanning", "H = [Λ((ω⊗ι)Δ(x))]", rank1 == n,
               "rank " + std::to_string(rank1));

    CMatrix p = weight_products(alg, psi);
    CMatrix span2(n, n * n * n);
    for (Index b = 0; b < n; ++b) {
        CVector bs = alg.involute(alg.basis(b));
        for (Index x = 0; x < n; ++x) {
            CVector dbx = comul * alg.multiply(bs, alg.basis(x));
            for (Index a = 0; a < n; ++a) span2.col((b * n + x) * n + a) = g.vec(weighted_slice(dbx, p, a));
        }
    }
    Index rank2 = rank(span2);
    r.add_bool(prefix + ".eq2_spanning", "H = [Λ((ψ⊗ι)(Δ(b*x)(a⊗1)))]", rank2 == n,
               "rank " + std::to_string(rank2));
    return r;
}

/// Relations satisfied by V: the slice formula and the vital commutation
/// relation with ∇_ψ ⊗ N.
inline VerificationReport v_structure_suite(const StarAlgebra& alg, const CMatrix& comul,
                                            const CMatrix& gamma, const CMatrix& v,
                                            const CMatrix& nabla_psi, const CMatrix& N,
                                            const Functional& psi, double tol,
                                            const std::string& prefix = "v") {
    VerificationReport r;
    const Index n = alg.dim();
    r.add(prefix + ".unitary", "V*V = VV* = 1", unitarity_defect(v), tol);
    r.add(prefix + ".pentagon", "V₁₂V₁₃V₂₃ = V₂₃V₁₂", pentagon_residual(v, n), tol);
    double slice = 0.0;
    CMatrix v_star = v.adjoint();
    CMatrix p = weight_products(alg, psi);
    CMatrix gamma_inv = gamma.inverse();
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) {
            // ω_{Γ(a),Γ(b)}(T) = ⟨TΓ(a), Γ(b)⟩ = Tr((Γ(a) Γ(b)*) T).
            CMatrix d = gamma.col(a) * gamma.col(b).adjoint();
            CMatrix lhs = slice_first(v_star, d, n, n);
            CVector rhs = weighted_slice(comul * alg.involute(alg.basis(b)), p, a);
            CMatrix rhs_op = gamma * alg.left_matrix(rhs) * gamma_inv;
            slice += (lhs - rhs_op).squaredNorm();
        }
    r.add(prefix + ".slice", "(ω_{Γ(a),Γ(b)}⊗ι)(V*) = (ψ⊗ι)(Δ(b*)(a⊗1))", std::sqrt(slice), tol);
    std::vector<CMatrix> pis;
    for (Index k = 0; k < n; ++k) pis.push_back(gamma * alg.lmul(k) * gamma_inv);
    const CMatrix id = identity(n);
    double implements = 0.0;
    for (Index k = 0; k < n; ++k) {
        CMatrix rhs = CMatrix::Zero(n * n, n * n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) {
                cplx c = comul(i * n + j, k);
                if (c != cplx(0.0)) rhs += c * kron(pis[static_cast<std::size_t>(i)], pis[static_cast<std::size_t>(j)]);
            }
        implements += (v * kron(pis[static_cast<std::size_t>(k)], id) * v_star - rhs).squaredNorm();
    }
    r.add(prefix + ".implements_comultiplication", "Δ(x) = V(x⊗1)V*", std::sqrt(implements), tol);
    CMatrix nn = kron(nabla_psi, N);
    r.add(prefix + ".eq3", "V(∇_ψ⊗N) = (∇_ψ⊗N)V", (v * nn - nn * v).norm(), tol);
    return r;
}

}  // namespace vnqg
