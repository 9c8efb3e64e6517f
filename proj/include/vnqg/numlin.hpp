#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vnqg/error.hpp"

namespace vnqg {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};

/// Dimension-scaled tolerance used for structural decisions (rank,
/// positivity, hermiticity). Identity checks carry their own thresholds.
struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-12;

    double effective(Index n) const { return abs + rel * static_cast<double>(n); }
};

inline double residual(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::DimensionMismatch, "residual of differently shaped matrices");
    return (a - b).norm();
}

inline CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

/// Kronecker product; the first factor carries the slower index, so the
/// coordinate of e_a ⊗ e_b is a * dim(b) + b.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline CVector kron_vec(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// Flip Σ on ℂⁿ ⊗ ℂⁿ.
inline CMatrix flip(Index n) {
    CMatrix s = CMatrix::Zero(n * n, n * n);
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) s(b * n + a, a * n + b) = 1.0;
    return s;
}

/// Flip on ℂᵐ ⊗ ℂⁿ → ℂⁿ ⊗ ℂᵐ.
inline CMatrix flip(Index m, Index n) {
    CMatrix s = CMatrix::Zero(m * n, m * n);
    for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < n; ++b) s(b * m + a, a * n + b) = 1.0;
    return s;
}

inline bool is_hermitian(const CMatrix& a, const Tolerance& tol = {}) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).norm() <= tol.effective(a.rows()) * std::max(1.0, a.norm());
}

inline bool is_unitary(const CMatrix& a, const Tolerance& tol = {}) {
    if (a.rows() != a.cols()) return false;
    return (a.adjoint() * a - identity(a.rows())).norm() <= tol.effective(a.rows());
}

inline double unitarity_defect(const CMatrix& a) {
    return std::max((a.adjoint() * a - identity(a.rows())).norm(),
                    (a * a.adjoint() - identity(a.rows())).norm());
}

struct HermEig {
    RVector values;  // ascending
    CMatrix vectors;  // unitary, columns are eigenvectors
};

/// Spectral decomposition of a Hermitian matrix.
inline HermEig herm_eig(const CMatrix& a, const Tolerance& tol = {}) {
    if (!is_hermitian(a, tol))
        throw Error(ErrorKind::NotHermitian, "symmetry defect " +
                                                 std::to_string((a - a.adjoint()).norm()));
    CMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    return {es.eigenvalues(), es.eigenvectors()};
}

inline bool is_positive_semidefinite(const CMatrix& a, const Tolerance& tol = {}) {
    if (!is_hermitian(a, tol)) return false;
    if (a.rows() == 0) return true;
    return herm_eig(a, tol).values.minCoeff() >= -tol.effective(a.rows()) * std::max(1.0, a.norm());
}

inline bool is_positive_definite(const CMatrix& a, const Tolerance& tol = {}) {
    if (!is_hermitian(a, tol)) return false;
    if (a.rows() == 0) return true;
    return herm_eig(a, tol).values.minCoeff() > tol.effective(a.rows()) * std::max(1.0, a.norm());
}

inline CMatrix from_spectrum(const HermEig& e, const std::function<cplx(double)>& f) {
    CVector d(e.values.size());
    for (Index i = 0; i < e.values.size(); ++i) d(i) = f(e.values(i));
    return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

enum class MatFnKind { Power, Log, Exp };

struct MatFn {
    MatFnKind kind = MatFnKind::Power;
    cplx z = 1.0;  // exponent for Power

    static MatFn power(cplx z) { return {MatFnKind::Power, z}; }
    static MatFn log() { return {MatFnKind::Log, 0.0}; }
    static MatFn exp() { return {MatFnKind::Exp, 0.0}; }
};

/// Applies f on the spectrum of a Hermitian matrix; power and log require
/// positive definiteness.
inline CMatrix mat_fn(const CMatrix& a, MatFn f, const Tolerance& tol = {}) {
    HermEig e = herm_eig(a, tol);
    if (f.kind != MatFnKind::Exp && e.values.size() > 0 &&
        e.values.minCoeff() <= tol.effective(a.rows()))
        throw Error(ErrorKind::NotPositiveDefinite,
                    "minimum eigenvalue " + std::to_string(e.values.minCoeff()));
    switch (f.kind) {
    case MatFnKind::Power:
        return from_spectrum(e, [&](double l) { return std::exp(f.z * std::log(l)); });
    case MatFnKind::Log:
        return from_spectrum(e, [](double l) { return cplx(std::log(l)); });
    case MatFnKind::Exp:
        return from_spectrum(e, [](double l) { return cplx(std::exp(l)); });
    }
    return a;
}

inline CMatrix mat_power(const CMatrix& a, cplx z, const Tolerance& tol = {}) {
    return mat_fn(a, MatFn::power(z), tol);
}
inline CMatrix mat_log(const CMatrix& a, const Tolerance& tol = {}) {
    return mat_fn(a, MatFn::log(), tol);
}
inline CMatrix mat_exp(const CMatrix& a, const Tolerance& tol = {}) {
    return mat_fn(a, MatFn::exp(), tol);
}

/// Antilinear operator v ↦ mat · conj(v) in the fixed orthonormal basis.
struct AntilinearOp {
    CMatrix mat;

    static AntilinearOp conjugation(Index n) { return {identity(n)}; }

    Index dim() const { return mat.rows(); }
    CVector apply(const CVector& v) const { return mat * v.conjugate(); }
    CMatrix apply_columns(const CMatrix& v) const { return mat * v.conjugate(); }

    /// Antilinear adjoint K♯ with ⟨K♯u, v⟩ = ⟨Kv, u⟩.
    AntilinearOp sharp() const { return {mat.transpose()}; }

    /// Linear operator K ∘ L.
    AntilinearOp after(const CMatrix& l) const { return {mat * l.conjugate()}; }

    /// this ∘ other for two antilinear maps: a linear operator.
    CMatrix compose(const AntilinearOp& other) const { return mat * other.mat.conjugate(); }

    /// K X K as a linear operator.
    CMatrix conjugate_linear(const CMatrix& x) const {
        return mat * x.conjugate() * mat.conjugate();
    }

    AntilinearOp scaled(cplx c) const { return {c * mat}; }
};

/// Linear ∘ antilinear.
inline AntilinearOp operator*(const CMatrix& l, const AntilinearOp& k) { return {l * k.mat}; }

/// Tensor product of two antilinear maps.
inline AntilinearOp kron(const AntilinearOp& a, const AntilinearOp& b) {
    return {kron(a.mat, b.mat)};
}

struct AntilinearPolar {
    CMatrix n;       // g♯ ∘ g, positive definite
    AntilinearOp i;  // antiunitary, g = i ∘ n^{1/2}
};

/// Polar decomposition g = i ∘ n^{1/2} of an invertible antilinear operator.
inline AntilinearPolar antilinear_polar(const AntilinearOp& g, const Tolerance& tol = {}) {
    CMatrix n = g.sharp().compose(g);
    n = 0.5 * (n + n.adjoint());
    HermEig e = herm_eig(n, tol);
    if (e.values.size() > 0 && e.values.minCoeff() <= tol.effective(n.rows()))
        throw Error(ErrorKind::Singular, "antilinear operator is not invertible");
    CMatrix n_inv_half = from_spectrum(e, [](double l) { return cplx(1.0 / std::sqrt(l)); });
    return {n, g.after(n_inv_half)};
}

/// Numerical rank against the effective tolerance, relative to the largest
/// singular value.
inline Index rank(const CMatrix& a, const Tolerance& tol = {}) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    const RVector& s = svd.singularValues();
    double cut = tol.effective(std::max(a.rows(), a.cols())) * std::max(1.0, s(0));
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

/// Orthonormal basis of the right nullspace, as columns.
inline CMatrix nullspace(const CMatrix& a, const Tolerance& tol = {}) {
    const Index n = a.cols();
    if (a.rows() == 0) return identity(n);
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();
    double cut = tol.effective(std::max(a.rows(), a.cols())) * std::max(1.0, s.size() ? s(0) : 0.0);
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return svd.matrixV().rightCols(n - r);
}

/// Orthonormal basis of the column span.
inline CMatrix orthonormal_span(const CMatrix& a, const Tolerance& tol = {}) {
    if (a.cols() == 0) return CMatrix(a.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
    const RVector& s = svd.singularValues();
    double cut = tol.effective(std::max(a.rows(), a.cols())) * std::max(1.0, s(0));
    Index r = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return svd.matrixU().leftCols(r);
}

inline CVector vec(const CMatrix& x) {
    return Eigen::Map<const CVector>(x.data(), x.size());
}

inline CMatrix unvec(const CVector& v, Index rows) {
    return Eigen::Map<const CMatrix>(v.data(), rows, v.size() / rows);
}

inline CMatrix stack_vecs(const std::vector<CMatrix>& mats) {
    if (mats.empty()) return CMatrix(0, 0);
    CMatrix out(mats.front().size(), static_cast<Index>(mats.size()));
    for (std::size_t k = 0; k < mats.size(); ++k) {
        if (mats[k].size() != out.rows())
            throw Error(ErrorKind::DimensionMismatch, "operators of different sizes");
        out.col(static_cast<Index>(k)) = vec(mats[k]);
    }
    return out;
}

inline std::vector<CMatrix> unstack_vecs(const CMatrix& cols, Index rows) {
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(cols.cols()));
    for (Index k = 0; k < cols.cols(); ++k) out.push_back(unvec(cols.col(k), rows));
    return out;
}

/// Orthonormal basis (trace inner product) of the span of square matrices.
inline std::vector<CMatrix> span_basis(const std::vector<CMatrix>& mats, const Tolerance& tol = {}) {
    if (mats.empty()) return {};
    return unstack_vecs(orthonormal_span(stack_vecs(mats), tol), mats.front().rows());
}

/// Smallest unital *-algebra containing the generators, as a trace-orthonormal
/// basis. Products are iterated until the dimension stabilizes.
inline std::vector<CMatrix> algebra_closure(const std::vector<CMatrix>& generators, Index dim,
                                            const Tolerance& tol = {}) {
    std::vector<CMatrix> seed{identity(dim)};
    for (const auto& g : generators) {
        if (g.rows() != dim || g.cols() != dim)
            throw Error(ErrorKind::DimensionMismatch, "generator is not square of ambient size");
        seed.push_back(g);
        seed.push_back(g.adjoint());
    }
    std::vector<CMatrix> basis = span_basis(seed, tol);
    for (;;) {
        std::vector<CMatrix> grown = basis;
        for (const auto& a : basis)
            for (const auto& b : basis) grown.push_back(a * b);
        std::vector<CMatrix> next = span_basis(grown, tol);
        if (next.size() == basis.size()) return next;
        basis = std::move(next);
    }
}

/// Basis of {X : X a = a X for every a in the list}, trace-orthonormal.
inline std::vector<CMatrix> commutant(const std::vector<CMatrix>& algebra, Index dim,
                                      const Tolerance& tol = {}) {
    const Index d2 = dim * dim;
    const CMatrix id = identity(dim);
    // vec(aX − Xa) = (I ⊗ a − aᵀ ⊗ I) vec(X) for column-major vec.
    CMatrix system = CMatrix::Zero(static_cast<Index>(algebra.size()) * d2, d2);
    for (std::size_t k = 0; k < algebra.size(); ++k) {
        const CMatrix& a = algebra[k];
        if (a.rows() != dim || a.cols() != dim)
            throw Error(ErrorKind::DimensionMismatch, "algebra element of wrong size");
        system.middleRows(static_cast<Index>(k) * d2, d2) = kron(id, a) - kron(a.transpose(), id);
    }
    return unstack_vecs(nullspace(system, tol), dim);
}

/// span(a) = span(b), decided by ranks of the concatenation.
inline bool subspace_equal(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {}) {
    if (a.rows() != b.rows())
        throw Error(ErrorKind::DimensionMismatch, "subspaces of different ambient spaces");
    CMatrix both(a.rows(), a.cols() + b.cols());
    both << a, b;
    Index ra = rank(a, tol), rb = rank(b, tol), rab = rank(both, tol);
    return ra == rb && rb == rab;
}

inline bool subspace_equal(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b,
                           const Tolerance& tol = {}) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    return subspace_equal(stack_vecs(a), stack_vecs(b), tol);
}

/// Distance between the orthogonal projections onto two spans; a
/// residual-valued companion of subspace_equal.
inline double subspace_distance(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b,
                                const Tolerance& tol = {}) {
    CMatrix qa = orthonormal_span(stack_vecs(a), tol);
    CMatrix qb = orthonormal_span(stack_vecs(b), tol);
    return (qa * qa.adjoint() - qb * qb.adjoint()).norm();
}

inline Index intersection_dim(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b,
                              const Tolerance& tol = {}) {
    CMatrix sa = stack_vecs(a), sb = stack_vecs(b);
    CMatrix both(sa.rows(), sa.cols() + sb.cols());
    both << sa, sb;
    return rank(sa, tol) + rank(sb, tol) - rank(both, tol);
}

/// Coordinates of operators relative to a fixed (not necessarily orthonormal)
/// basis of a subspace of matrices.
class OperatorSpan {
public:
    OperatorSpan() = default;
    explicit OperatorSpan(std::vector<CMatrix> basis, const Tolerance& tol = {})
        : basis_(std::move(basis)), tol_(tol) {
        if (basis_.empty()) return;
        rows_ = basis_.front().rows();
        stacked_ = stack_vecs(basis_);
        qr_.compute(stacked_);
        if (rank(stacked_, tol_) != stacked_.cols())
            throw Error(ErrorKind::SpanDeficient, "operator basis is linearly dependent");
    }

    Index size() const { return static_cast<Index>(basis_.size()); }
    Index ambient() const { return rows_; }
    const std::vector<CMatrix>& basis() const { return basis_; }

    /// Least-squares coordinates and the relative residual of the fit.
    std::pair<CVector, double> fit(const CMatrix& x) const {
        CVector v = vec(x);
        CVector c = qr_.solve(v);
        double res = (stacked_ * c - v).norm();
        return {c, res / std::max(1.0, v.norm())};
    }

    double distance(const CMatrix& x) const { return fit(x).second; }

    bool contains(const CMatrix& x, double threshold) const { return distance(x) <= threshold; }

    /// Coordinates; NotInAlgebra when x leaves the span beyond the threshold.
    CVector coords(const CMatrix& x, double threshold = 1e-9) const {
        auto [c, res] = fit(x);
        if (!(res <= threshold))
            throw Error(ErrorKind::NotInAlgebra, "operator leaves the span, residual " +
                                                     std::to_string(res));
        return c;
    }

    CMatrix combine(const CVector& c) const {
        CMatrix out = CMatrix::Zero(rows_, rows_);
        for (std::size_t k = 0; k < basis_.size(); ++k) out += c(static_cast<Index>(k)) * basis_[k];
        return out;
    }

private:
    std::vector<CMatrix> basis_;
    Tolerance tol_;
    Index rows_ = 0;
    CMatrix stacked_;
    Eigen::HouseholderQR<CMatrix> qr_;
};

/// Leg-numbered action of an operator on H⊗H inside H⊗H⊗H, applied to the
/// columns of x without forming the n³ × n³ matrix.
namespace legs {

inline CMatrix apply12(const CMatrix& w, const CMatrix& x, Index n) {
    CMatrix out(x.rows(), x.cols());
    const CMatrix wt = w.transpose();
    for (Index c = 0; c < x.cols(); ++c) {
        Eigen::Map<const CMatrix> m(x.col(c).data(), n, n * n);
        Eigen::Map<CMatrix> r(out.col(c).data(), n, n * n);
        r.noalias() = m * wt;
    }
    return out;
}

inline CMatrix apply23(const CMatrix& w, const CMatrix& x, Index n) {
    CMatrix out(x.rows(), x.cols());
    for (Index c = 0; c < x.cols(); ++c) {
        Eigen::Map<const CMatrix> m(x.col(c).data(), n * n, n);
        Eigen::Map<CMatrix> r(out.col(c).data(), n * n, n);
        r.noalias() = w * m;
    }
    return out;
}

/// Row permutation exchanging legs 2 and 3.
inline CMatrix swap23(const CMatrix& x, Index n) {
    CMatrix out(x.rows(), x.cols());
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            for (Index c = 0; c < n; ++c) out.row(a * n * n + c * n + b) = x.row(a * n * n + b * n + c);
    return out;
}

inline CMatrix apply13(const CMatrix& w, const CMatrix& x, Index n) {
    return swap23(apply12(w, swap23(x, n), n), n);
}

}  // namespace legs

/// ‖W₁₂W₁₃W₂₃ − W₂₃W₁₂‖ for an operator on ℂⁿ ⊗ ℂⁿ.
inline double pentagon_residual(const CMatrix& w, Index n) {
    if (w.rows() != n * n || w.cols() != n * n)
        throw Error(ErrorKind::DimensionMismatch, "pentagon operand is not on H⊗H");
    const CMatrix id = identity(n * n * n);
    CMatrix lhs = legs::apply12(w, legs::apply13(w, legs::apply23(w, id, n), n), n);
    CMatrix rhs = legs::apply23(w, legs::apply12(w, id, n), n);
    return (lhs - rhs).norm();
}

/// Slices of an operator on ℂᵐ ⊗ ℂⁿ: X = Σ_{ij} E_ij ⊗ X_ij with X_ij the
/// n × n block at (i, j).
inline CMatrix block(const CMatrix& x, Index i, Index j, Index n) {
    return x.block(i * n, j * n, n, n);
}

/// (ι ⊗ ω)(X) for X on ℂᵐ ⊗ ℂⁿ and ω given as a density: ω(y) = Tr(D y).
inline CMatrix slice_second(const CMatrix& x, const CMatrix& density, Index m, Index n) {
    CMatrix out(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) out(i, j) = (density * block(x, i, j, n)).trace();
    return out;
}

/// (ω ⊗ ι)(X) for X on ℂᵐ ⊗ ℂⁿ and ω(y) = Tr(D y) on the first leg.
inline CMatrix slice_first(const CMatrix& x, const CMatrix& density, Index m, Index n) {
    CMatrix out = CMatrix::Zero(n, n);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) out += density(j, i) * block(x, i, j, n);
    return out;
}

}  // namespace vnqg
