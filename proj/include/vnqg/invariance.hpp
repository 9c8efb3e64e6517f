#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vnqg/duality.hpp"
#include "vnqg/error.hpp"
#include "vnqg/numlin.hpp"
#include "vnqg/report.hpp"

namespace vnqg {

enum class WeightLeg { First, Last };

/// A functional on π(M) applied to one leg of an operator on a tensor
/// product, through its trace density.
struct SlicedWeight {
    WeightLeg leg = WeightLeg::Last;
    CMatrix density;  // ω(x) = Tr(D x) on π(M)

    Index dim() const { return density.rows(); }
};

inline SlicedWeight sliced_weight(const GnsData& g, const Functional& f, WeightLeg leg) {
    return {leg, density_wrt_trace(g.pi, f.w)};
}

/// (ι⊗ω)(X) for X on K⊗H (last leg) or (ω⊗ι)(X) for X on H⊗K (first leg).
inline CMatrix slice_weight(const CMatrix& x, const SlicedWeight& sw) {
    const Index n = sw.dim();
    if (x.rows() != x.cols() || n == 0 || x.rows() % n != 0)
        throw Error(ErrorKind::DimensionMismatch, "operator of size " + std::to_string(x.rows()) + "×" +
                                                      std::to_string(x.cols()) + " has no leg of dimension " +
                                                      std::to_string(n));
    const Index k = x.rows() / n;
    return sw.leg == WeightLeg::Last ? slice_second(x, sw.density, k, n) : slice_first(x, sw.density, n, k);
}

struct InvarianceConfig {
    std::vector<Index> kdims{1, 2, 3};
    int batch = 20;
    std::uint64_t seed = 1;
};

namespace detail {

/// Random element Σ E_ij ⊗ y_ij of B(ℂᵏ) ⊗ π(M), or of π(M) ⊗ B(ℂᵏ) when
/// `algebra_first`.
inline CMatrix random_tensor_element(const GnsData& g, Index k, bool algebra_first, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    const Index n = g.dim();
    CMatrix out = CMatrix::Zero(k * n, k * n);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) {
            CVector c(n);
            for (Index m = 0; m < n; ++m) c(m) = cplx(dist(rng), dist(rng));
            CMatrix e = CMatrix::Zero(k, k);
            e(i, j) = 1.0;
            out += algebra_first ? kron(g.pi_of(c), e) : kron(e, g.pi_of(c));
        }
    return out;
}

/// (ι⊗Δ)(X) for X = Σ E_ij ⊗ x_ij in B(ℂᵏ) ⊗ π(M).
inline CMatrix id_tensor_delta(const QuantumGroupSide& s, const CMatrix& x, Index k) {
    const Index n = s.dim();
    CMatrix out = CMatrix::Zero(k * n * n, k * n * n);
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) {
            CMatrix e = CMatrix::Zero(k, k);
            e(i, j) = 1.0;
            CVector c = s.g.coords(x.block(i * n, j * n, n, n));
            out += kron(e, pi_tensor(s.g, s.qg.comul * c));
        }
    return out;
}

/// (Δ⊗ι)(X) for X = Σ x_ij ⊗ E_ij in π(M) ⊗ B(ℂᵏ).
inline CMatrix delta_tensor_id(const QuantumGroupSide& s, const CMatrix& x, Index k) {
    const Index n = s.dim();
    CMatrix out = CMatrix::Zero(n * n * k, n * n * k);
    auto [slices, res] = first_leg_slices(x, s.g.pi, k);
    for (Index m = 0; m < n; ++m)
        out += kron(pi_tensor(s.g, s.qg.comul.col(m)), slices[static_cast<std::size_t>(m)]);
    return out;
}

inline double min_eigenvalue(const CMatrix& a) {
    return herm_eig(0.5 * (a + a.adjoint())).values.minCoeff();
}

}  // namespace detail

/// (ι⊗ι⊗φ)(ι⊗Δ)(X) = (ι⊗φ)(X)⊗1 on seeded positive X = Y*Y in B(ℂᵏ)⊗M, the
/// basis case (ι⊗φ)Δ(x) = φ(x)1, the right-sided mirror, rank-one P_η
/// through the implementing unitary V, and the defining property of the
/// sliced weight. `dual_basis` spans the dual algebra on the same H.
inline VerificationReport strong_invariance_suite(const QuantumGroupSide& s, const std::vector<CMatrix>& dual_basis,
                                                  const InvarianceConfig& cfg, double tol,
                                                  const std::string& prefix = "invariance") {
    VerificationReport r;
    const Index n = s.dim();
    const CMatrix id = identity(n);
    std::mt19937_64 rng(cfg.seed);
    SlicedWeight phi_last = sliced_weight(s.g, s.qg.phi, WeightLeg::Last);
    SlicedWeight psi_first = sliced_weight(s.g, s.qg.psi, WeightLeg::First);

    double basis_left = 0.0, basis_right = 0.0;
    for (Index m = 0; m < n; ++m) {
        CMatrix dx = pi_tensor(s.g, s.qg.comul.col(m));
        basis_left += (slice_weight(dx, phi_last) - s.qg.phi.w(m) * id).squaredNorm();
        basis_right += (slice_weight(dx, psi_first) - s.qg.psi.w(m) * id).squaredNorm();
    }
    r.add(prefix + ".basis_left", "(ι⊗φ)Δ(x) = φ(x)1", std::sqrt(basis_left), tol);
    r.add(prefix + ".basis_right", "(ψ⊗ι)Δ(x) = ψ(x)1", std::sqrt(basis_right), tol);

    double min_eig = 0.0, commutes = 0.0;
    for (Index k : cfg.kdims) {
        double worst = 0.0, worst_right = 0.0;
        for (int b = 0; b < cfg.batch; ++b) {
            CMatrix y = detail::random_tensor_element(s.g, k, false, rng);
            CMatrix x = y.adjoint() * y;
            CMatrix lhs = slice_weight(detail::id_tensor_delta(s, x, k), phi_last);
            CMatrix sliced = slice_weight(x, phi_last);
            worst = std::max(worst, (lhs - kron(sliced, id)).norm() / std::max(1.0, x.norm()));
            min_eig = std::min(min_eig, detail::min_eigenvalue(sliced) / std::max(1.0, x.norm()));

            // ω((ι⊗φ)(X)) = φ((ω⊗ι)(X)) for a random density ω on ℂᵏ.
            CMatrix w = vnqg::detail::random_functional(k * k, rng).w.reshaped(k, k);
            CMatrix omega_slice = slice_first(x, w, k, n);
            cplx lhs_c = (w * sliced).trace();
            cplx rhs_c = (phi_last.density * omega_slice).trace();
            commutes = std::max(commutes, std::abs(lhs_c - rhs_c) / std::max(1.0, x.norm()));

            CMatrix yr = detail::random_tensor_element(s.g, k, true, rng);
            CMatrix xr = yr.adjoint() * yr;
            CMatrix lhs_r = slice_weight(detail::delta_tensor_id(s, xr, k), psi_first);
            worst_right = std::max(worst_right,
                                   (lhs_r - kron(id, slice_weight(xr, psi_first))).norm() / std::max(1.0, xr.norm()));
        }
        r.add(prefix + ".k" + std::to_string(k), "(ι⊗ι⊗φ)(ι⊗Δ)(X) = (ι⊗φ)(X)⊗1", worst, tol,
              std::to_string(cfg.batch) + " positive samples Y*Y");
        r.add(prefix + ".right_k" + std::to_string(k), "(ψ⊗ι⊗ι)(Δ⊗ι)(X) = 1⊗(ψ⊗ι)(X)", worst_right, tol);
    }
    r.add(prefix + ".slice_positive", "(ι⊗φ)(X) ≥ 0 for X ≥ 0", std::max(0.0, -min_eig), tol);
    r.add(prefix + ".slice_defining", "ω((ι⊗φ)(X)) = φ((ω⊗ι)(X))", commutes, tol);

    // P_η ∈ B(ℂ²⊗H): T(P_η) = (ι⊗ι⊗φ)((1⊗V)(P_η⊗1)(1⊗V*)) lies in B(ℂ²)⊗M̂,
    // and T agrees with (ι⊗ι⊗φ)(ι⊗Δ) on B(ℂ²)⊗M.
    const Index k = 2;
    CMatrix onev = kron(identity(k), s.V);
    OperatorSpan dual_span(dual_basis);
    double membership = 0.0, t_route = 0.0;
    for (int b = 0; b < cfg.batch; ++b) {
        CVector eta = vnqg::detail::random_functional(k * n, rng).w;
        eta /= eta.norm();
        CMatrix p_eta = eta * eta.adjoint();
        CMatrix t = slice_weight(onev * kron(p_eta, id) * onev.adjoint(), phi_last);
        double res = 0.0;
        for (Index i = 0; i < k; ++i)
            for (Index j = 0; j < k; ++j) {
                CMatrix blk = block(t, i, j, n);
                res += std::pow(dual_span.distance(blk) * std::max(1.0, blk.norm()), 2);
            }
        membership = std::max(membership, std::sqrt(res));

        CMatrix y = detail::random_tensor_element(s.g, k, false, rng);
        CMatrix x = y.adjoint() * y;
        CMatrix via_v = slice_weight(onev * kron(x, id) * onev.adjoint(), phi_last);
        CMatrix via_delta = slice_weight(detail::id_tensor_delta(s, x, k), phi_last);
        t_route = std::max(t_route, (via_v - via_delta).norm() / std::max(1.0, x.norm()));
    }
    r.add(prefix + ".rank_one_in_BK_M_hat", "T(P_η) ∈ B(K)⊗M̂", membership, tol);
    r.add(prefix + ".T_matches_comultiplication", "(1⊗V)(X⊗1)(1⊗V*) = (ι⊗Δ)(X) under ι⊗ι⊗φ", t_route, tol);
    return r;
}

}  // namespace vnqg
