#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "vnqg/error.hpp"
#include "vnqg/numlin.hpp"
#include "vnqg/report.hpp"

namespace vnqg {

/// Finite-dimensional *-algebra with basis e_0 … e_{n-1}.
///
/// Products are stored as left-multiplication matrices, lmul[i](k, j) being
/// the coefficient of e_k in e_i e_j. The involution is x* = star · conj(x),
/// so column i of `star` holds the coordinates of e_i*.
class StarAlgebra {
public:
    StarAlgebra() = default;

    StarAlgebra(std::vector<CMatrix> lmul, CMatrix star, CVector unit,
                std::vector<std::string> labels = {})
        : lmul_(std::move(lmul)), star_(std::move(star)), unit_(std::move(unit)),
          labels_(std::move(labels)) {
        const Index n = dim();
        if (star_.rows() != n || star_.cols() != n || unit_.size() != n)
            throw Error(ErrorKind::DimensionMismatch, "star algebra data of inconsistent size");
        for (const auto& l : lmul_)
            if (l.rows() != n || l.cols() != n)
                throw Error(ErrorKind::DimensionMismatch, "structure constants of wrong size");
        if (labels_.empty())
            for (Index i = 0; i < n; ++i) labels_.push_back("e" + std::to_string(i));
        if (static_cast<Index>(labels_.size()) != n)
            throw Error(ErrorKind::DimensionMismatch, "label count differs from dimension");
    }

    /// Builds from dense structure constants c[i][j][k] (e_i e_j = Σ_k c e_k)
    /// and involution coefficients s[i][j] (e_i* = Σ_j s[i][j] e_j).
    static StarAlgebra from_constants(const std::vector<std::vector<CVector>>& c, const CMatrix& s,
                                      CVector unit, std::vector<std::string> labels = {}) {
        const Index n = s.rows();
        std::vector<CMatrix> lmul(static_cast<std::size_t>(n), CMatrix::Zero(n, n));
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) lmul[i].col(j) = c[i][j];
        return StarAlgebra(std::move(lmul), s.transpose(), std::move(unit), std::move(labels));
    }

    Index dim() const { return static_cast<Index>(lmul_.size()); }
    const std::vector<CMatrix>& lmul() const { return lmul_; }
    const CMatrix& lmul(Index i) const { return lmul_[static_cast<std::size_t>(i)]; }
    const CMatrix& star() const { return star_; }
    const CVector& unit() const { return unit_; }
    const std::vector<std::string>& labels() const { return labels_; }

    CVector basis(Index k) const { return CVector::Unit(dim(), k); }

    /// Coefficient of e_k in e_i e_j.
    cplx c(Index i, Index j, Index k) const { return lmul(i)(k, j); }

    /// Matrix of y ↦ x y.
    CMatrix left_matrix(const CVector& x) const {
        check(x);
        CMatrix out = CMatrix::Zero(dim(), dim());
        for (Index i = 0; i < dim(); ++i)
            if (x(i) != cplx(0.0)) out += x(i) * lmul(i);
        return out;
    }

    /// Matrix of y ↦ y x.
    CMatrix right_matrix(const CVector& x) const {
        check(x);
        CMatrix out(dim(), dim());
        for (Index i = 0; i < dim(); ++i) out.col(i) = lmul(i) * x;
        return out;
    }

    CVector multiply(const CVector& a, const CVector& b) const {
        check(a);
        check(b);
        return left_matrix(a) * b;
    }

    CVector involute(const CVector& a) const {
        check(a);
        return star_ * a.conjugate();
    }

    bool is_commutative(double tol = 1e-10) const {
        for (Index i = 0; i < dim(); ++i)
            for (Index j = 0; j < dim(); ++j)
                if ((lmul(i).col(j) - lmul(j).col(i)).norm() > tol) return false;
        return true;
    }

    /// Dimension of the center, from the joint kernel of all commutators.
    Index center_dim(const Tolerance& tol = {}) const {
        CMatrix sys(dim() * dim(), dim());
        for (Index j = 0; j < dim(); ++j) {
            CVector ej = basis(j);
            sys.middleRows(j * dim(), dim()) = right_matrix(ej) - left_matrix(ej);
        }
        return nullspace(sys, tol).cols();
    }

    void check(const CVector& x) const {
        if (x.size() != dim())
            throw Error(ErrorKind::DimensionMismatch, "element has " + std::to_string(x.size()) +
                                                         " coordinates, algebra has dimension " +
                                                         std::to_string(dim()));
    }

private:
    std::vector<CMatrix> lmul_;
    CMatrix star_;
    CVector unit_;
    std::vector<std::string> labels_;
};

/// Linear functional ω(x) = Σ_k ω_k x_k on algebra coordinates.
struct Functional {
    CVector w;

    cplx operator()(const CVector& x) const {
        if (x.size() != w.size())
            throw Error(ErrorKind::DimensionMismatch, "functional applied to wrong dimension");
        return (w.transpose() * x)(0, 0);
    }

    Index dim() const { return w.size(); }

    Functional operator*(cplx s) const { return {s * w}; }
};

/// G[i][j] = ω(e_i* e_j); ω is positive exactly when G is PSD.
inline CMatrix gram(const StarAlgebra& alg, const Functional& omega) {
    const Index n = alg.dim();
    CMatrix g(n, n);
    for (Index i = 0; i < n; ++i) {
        CVector ei_star = alg.involute(alg.basis(i));
        CMatrix l = alg.left_matrix(ei_star);
        for (Index j = 0; j < n; ++j) g(i, j) = omega(l.col(j));
    }
    return g;
}

struct Positivity {
    bool positive = false;
    bool faithful = false;
};

inline Positivity positivity_check(const StarAlgebra& alg, const Functional& omega,
                                   const Tolerance& tol = {}) {
    CMatrix g = gram(alg, omega);
    Positivity p;
    if (!is_hermitian(g, tol)) return p;
    HermEig e = herm_eig(g, tol);
    double cut = tol.effective(g.rows()) * std::max(1.0, g.norm());
    p.positive = e.values.minCoeff() >= -cut;
    p.faithful = p.positive && e.values.minCoeff() > cut;
    return p;
}

/// ω(x*) = conj ω(x) on the basis.
inline double hermiticity_defect(const StarAlgebra& alg, const Functional& omega) {
    double worst = 0.0;
    for (Index k = 0; k < alg.dim(); ++k) {
        CVector e = alg.basis(k);
        worst = std::max(worst, std::abs(omega(alg.involute(e)) - std::conj(omega(e))));
    }
    return worst;
}

/// Residuals of the *-algebra axioms.
inline VerificationReport axioms_check(const StarAlgebra& alg, double tol = 1e-10,
                                       const Tolerance& numtol = {}) {
    VerificationReport r;
    const Index n = alg.dim();
    const CMatrix id = identity(n);

    double assoc = 0.0;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            CMatrix lhs = alg.left_matrix(alg.lmul(i).col(j));
            assoc += (lhs - alg.lmul(i) * alg.lmul(j)).squaredNorm();
        }
    r.add("star_algebra.associativity", "(e_i e_j) e_k = e_i (e_j e_k)", std::sqrt(assoc), tol);

    double unit_left = (alg.left_matrix(alg.unit()) - id).norm();
    double unit_right = (alg.right_matrix(alg.unit()) - id).norm();
    r.add("star_algebra.unit", "1 x = x 1 = x", std::max(unit_left, unit_right), tol);

    r.add("star_algebra.involutive", "x** = x", (alg.star() * alg.star().conjugate() - id).norm(),
          tol);

    double anti = 0.0;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            CVector ei = alg.basis(i), ej = alg.basis(j);
            CVector lhs = alg.involute(alg.multiply(ei, ej));
            CVector rhs = alg.multiply(alg.involute(ej), alg.involute(ei));
            anti += (lhs - rhs).squaredNorm();
        }
    r.add("star_algebra.antimultiplicative", "(xy)* = y* x*", std::sqrt(anti), tol);

    // A C*-algebra needs x*x ≠ 0 for x ≠ 0: the regular trace Tr(L_{x*x}) is
    // then a faithful positive functional.
    CMatrix reg(n, n);
    for (Index i = 0; i < n; ++i) {
        CMatrix l = alg.left_matrix(alg.involute(alg.basis(i)));
        for (Index j = 0; j < n; ++j) reg(i, j) = alg.left_matrix(l.col(j)).trace();
    }
    double defect = 0.0;
    if (!is_hermitian(reg, numtol)) {
        defect = (reg - reg.adjoint()).norm();
    } else {
        HermEig e = herm_eig(reg, numtol);
        double cut = numtol.effective(n) * std::max(1.0, reg.norm());
        defect = e.values.minCoeff() > cut ? 0.0 : cut - e.values.minCoeff();
    }
    r.add("star_algebra.positive_involution", "x* x = 0 implies x = 0", defect, tol,
          "regular-trace Gram Tr(L(e_i* e_j)) must be positive definite");
    return r;
}

/// The unique D in span(basis) with ω(B_k) = Tr(D B_k) for all k.
inline CMatrix density_wrt_trace(const std::vector<CMatrix>& basis, const CVector& omega,
                                 double tol = 1e-9) {
    const Index m = static_cast<Index>(basis.size());
    if (omega.size() != m)
        throw Error(ErrorKind::DimensionMismatch, "functional and basis sizes differ");
    CMatrix t(m, m);
    for (Index k = 0; k < m; ++k)
        for (Index i = 0; i < m; ++i)
            t(k, i) = (basis[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(k)]).trace();
    CVector d = t.colPivHouseholderQr().solve(omega);
    double res = (t * d - omega).norm();
    if (!(res <= tol * std::max(1.0, omega.norm())))
        throw Error(ErrorKind::Inconsistent,
                    "no density inside the algebra, residual " + std::to_string(res));
    CMatrix out = CMatrix::Zero(basis.front().rows(), basis.front().cols());
    for (Index i = 0; i < m; ++i) out += d(i) * basis[static_cast<std::size_t>(i)];
    return out;
}

/// Structure constants, involution and unit of a unital *-algebra of
/// operators, pulled back to the given basis.
inline StarAlgebra algebra_from_operators(const std::vector<CMatrix>& basis,
                                          std::vector<std::string> labels = {},
                                          double tol = 1e-9) {
    OperatorSpan span(basis);
    const Index n = span.size();
    std::vector<CMatrix> lmul(static_cast<std::size_t>(n), CMatrix(n, n));
    CMatrix star(n, n);
    for (Index i = 0; i < n; ++i) {
        const CMatrix& bi = basis[static_cast<std::size_t>(i)];
        for (Index j = 0; j < n; ++j) lmul[static_cast<std::size_t>(i)].col(j) =
            span.coords(bi * basis[static_cast<std::size_t>(j)], tol);
        star.col(i) = span.coords(bi.adjoint(), tol);
    }
    CVector unit = span.coords(identity(span.ambient()), tol);
    return StarAlgebra(std::move(lmul), std::move(star), std::move(unit), std::move(labels));
}

}  // namespace vnqg
