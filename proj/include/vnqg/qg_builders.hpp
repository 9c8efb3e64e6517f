#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "vnqg/error.hpp"
#include "vnqg/numlin.hpp"
#include "vnqg/report.hpp"
#include "vnqg/spec_file.hpp"
#include "vnqg/star_algebra.hpp"

namespace vnqg {

/// Finite group given by its Cayley table; table[g][h] = gh.
struct GroupTable {
    int order = 0;
    std::vector<std::vector<int>> table;
    int identity = 0;
    std::vector<int> inverse;
    std::vector<std::string> labels;
    std::string name;

    int mul(int g, int h) const { return table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
    int inv(int g) const { return inverse[static_cast<std::size_t>(g)]; }

    /// Validates the table (Latin square, associativity) and derives the
    /// identity and inverses.
    static GroupTable from_table(std::vector<std::vector<int>> t, std::vector<std::string> labels = {},
                                 std::string name = {}) {
        GroupTable g;
        g.order = static_cast<int>(t.size());
        g.table = std::move(t);
        g.name = std::move(name);
        const int n = g.order;
        if (n == 0) throw Error(ErrorKind::InvalidTable, "empty Cayley table");
        for (const auto& row : g.table)
            if (static_cast<int>(row.size()) != n)
                throw Error(ErrorKind::InvalidTable, "Cayley table is not square");
        for (int a = 0; a < n; ++a) {
            std::vector<char> seen_row(static_cast<std::size_t>(n), 0), seen_col(static_cast<std::size_t>(n), 0);
            for (int b = 0; b < n; ++b) {
                int r = g.mul(a, b), c = g.mul(b, a);
                if (r < 0 || r >= n || c < 0 || c >= n)
                    throw Error(ErrorKind::InvalidTable, "table entry out of range");
                if (seen_row[static_cast<std::size_t>(r)]++ || seen_col[static_cast<std::size_t>(c)]++)
                    throw Error(ErrorKind::InvalidTable, "table is not a Latin square");
            }
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                        throw Error(ErrorKind::InvalidTable, "table is not associative");
        g.identity = -1;
        for (int e = 0; e < n && g.identity < 0; ++e) {
            bool ok = true;
            for (int a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
            if (ok) g.identity = e;
        }
        if (g.identity < 0) throw Error(ErrorKind::InvalidTable, "no identity element");
        g.inverse.assign(static_cast<std::size_t>(n), -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (g.mul(a, b) == g.identity) g.inverse[static_cast<std::size_t>(a)] = b;
        if (labels.empty())
            for (int a = 0; a < n; ++a) labels.push_back("g" + std::to_string(a));
        if (static_cast<int>(labels.size()) != n)
            throw Error(ErrorKind::InvalidTable, "label count differs from group order");
        g.labels = std::move(labels);
        return g;
    }

    bool is_abelian() const {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }
};

namespace groups {

inline GroupTable trivial() { return GroupTable::from_table({{0}}, {"e"}, "trivial"); }

inline GroupTable cyclic(int n) {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) {
        labels.push_back(std::to_string(a));
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    }
    return GroupTable::from_table(std::move(t), std::move(labels), "Z" + std::to_string(n));
}

/// Symmetric group on m letters; (gh)(x) = g(h(x)).
inline GroupTable symmetric(int m) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(m));
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const int n = static_cast<int>(perms.size());
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<std::string> labels;
    for (int a = 0; a < n; ++a) {
        std::string l;
        for (int x : perms[static_cast<std::size_t>(a)]) l += std::to_string(x + 1);
        labels.push_back(l);
        for (int b = 0; b < n; ++b) {
            std::vector<int> c(static_cast<std::size_t>(m));
            for (int x = 0; x < m; ++x)
                c[static_cast<std::size_t>(x)] =
                    perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
            t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    }
    return GroupTable::from_table(std::move(t), std::move(labels), "S" + std::to_string(m));
}

/// Quaternion group {±1, ±i, ±j, ±k}; element 2u + s is (−1)^s · q_u with
/// q = (1, i, j, k).
inline GroupTable quaternion() {
    // q_a q_b = sign · q_c
    static constexpr std::array<std::array<std::pair<int, int>, 4>, 4> unit_mul{{
        {{{0, 1}, {1, 1}, {2, 1}, {3, 1}}},
        {{{1, 1}, {0, -1}, {3, 1}, {2, -1}}},
        {{{2, 1}, {3, -1}, {0, -1}, {1, 1}}},
        {{{3, 1}, {2, 1}, {1, -1}, {0, -1}}},
    }};
    const char* names[4] = {"1", "i", "j", "k"};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    std::vector<std::string> labels;
    for (int a = 0; a < 8; ++a) {
        labels.push_back(std::string(a % 2 ? "-" : "+") + names[a / 2]);
        for (int b = 0; b < 8; ++b) {
            auto [u, sign] = unit_mul[static_cast<std::size_t>(a / 2)][static_cast<std::size_t>(b / 2)];
            int s = (a % 2) ^ (b % 2) ^ (sign < 0 ? 1 : 0);
            t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 2 * u + s;
        }
    }
    return GroupTable::from_table(std::move(t), std::move(labels), "Q8");
}

}  // namespace groups

/// Coordinates in A ⊗ A use index i * n + j for e_i ⊗ e_j.
inline CMatrix tensor_left_matrix(const StarAlgebra& alg, const CVector& x) {
    const Index n = alg.dim();
    CMatrix out = CMatrix::Zero(n * n, n * n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            cplx c = x(i * n + j);
            if (c != cplx(0.0)) out += c * kron(alg.lmul(i), alg.lmul(j));
        }
    return out;
}

inline CVector tensor_multiply(const StarAlgebra& alg, const CVector& x, const CVector& y) {
    return tensor_left_matrix(alg, x) * y;
}

inline CVector tensor_involute(const StarAlgebra& alg, const CVector& x) {
    return kron(alg.star(), alg.star()) * x.conjugate();
}

/// (ι⊗ω)(X) for X in tensor coordinates.
inline CVector slice_right(const CVector& x, const Functional& omega) {
    const Index n = omega.dim();
    return Eigen::Map<const CMatrix>(x.data(), n, n).transpose() * omega.w;
}

/// (ω⊗ι)(X) for X in tensor coordinates.
inline CVector slice_left(const CVector& x, const Functional& omega) {
    const Index n = omega.dim();
    return Eigen::Map<const CMatrix>(x.data(), n, n) * omega.w;
}

/// Comultiplication as the n² × n matrix of coordinates of Δ(e_k).
inline CMatrix flip_comultiplication(const CMatrix& comul, Index n) { return flip(n) * comul; }

struct HaarSolution {
    Functional phi;
    Functional psi;
    Index left_nullity = 0;
    Index right_nullity = 0;
};

/// Rows (k, i): Σ_j D[(i,j),k] φ_j − φ_k u_i = 0, i.e. (ι⊗φ)Δ(e_k) = φ(e_k)1.
inline CMatrix left_invariance_system(const StarAlgebra& alg, const CMatrix& comul) {
    const Index n = alg.dim();
    CMatrix sys = CMatrix::Zero(n * n, n);
    for (Index k = 0; k < n; ++k)
        for (Index i = 0; i < n; ++i) {
            Index row = k * n + i;
            for (Index j = 0; j < n; ++j) sys(row, j) += comul(i * n + j, k);
            sys(row, k) -= alg.unit()(i);
        }
    return sys;
}

/// Rows (k, j): Σ_i D[(i,j),k] ψ_i − ψ_k u_j = 0, i.e. (ψ⊗ι)Δ(e_k) = ψ(e_k)1.
inline CMatrix right_invariance_system(const StarAlgebra& alg, const CMatrix& comul) {
    const Index n = alg.dim();
    CMatrix sys = CMatrix::Zero(n * n, n);
    for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < n; ++j) {
            Index row = k * n + j;
            for (Index i = 0; i < n; ++i) sys(row, i) += comul(i * n + j, k);
            sys(row, k) -= alg.unit()(j);
        }
    return sys;
}

namespace detail {

inline Functional normalized_haar(const StarAlgebra& alg, const CMatrix& null, const char* side,
                                  const Tolerance& tol) {
    if (null.cols() == 0)
        throw Error(ErrorKind::NoPositiveSolution, std::string(side) + " invariance has no solution");
    if (null.cols() > 1)
        throw Error(ErrorKind::NonUnique, std::string(side) + " invariant functionals form a " +
                                              std::to_string(null.cols()) + "-dimensional space");
    CVector w = null.col(0);
    cplx at_unit = (w.transpose() * alg.unit())(0, 0);
    if (std::abs(at_unit) <= tol.effective(alg.dim()))
        throw Error(ErrorKind::NoPositiveSolution,
                    std::string(side) + " invariant functional vanishes at the unit");
    Functional f{w / at_unit};
    Positivity p = positivity_check(alg, f, tol);
    if (!p.positive || !p.faithful)
        throw Error(ErrorKind::NoPositiveSolution,
                    std::string(side) + " invariant functional is not a faithful state");
    return f;
}

}  // namespace detail

/// Left and right Haar states from the invariance nullspaces, each of which
/// must be one-dimensional.
inline HaarSolution solve_haar(const StarAlgebra& alg, const CMatrix& comul,
                               const Tolerance& tol = {}) {
    CMatrix nl = nullspace(left_invariance_system(alg, comul), tol);
    CMatrix nr = nullspace(right_invariance_system(alg, comul), tol);
    HaarSolution h;
    h.left_nullity = nl.cols();
    h.right_nullity = nr.cols();
    h.phi = detail::normalized_haar(alg, nl, "left", tol);
    h.psi = detail::normalized_haar(alg, nr, "right", tol);
    return h;
}

/// Finite quantum group: *-algebra, comultiplication and Haar states.
struct FiniteQuantumGroup {
    std::string name;
    StarAlgebra alg;
    CMatrix comul;  // n² × n
    Functional phi;
    Functional psi;
    Index left_nullity = 0;
    Index right_nullity = 0;

    Index dim() const { return alg.dim(); }

    CVector delta(const CVector& x) const { return comul * x; }

    bool is_cocommutative(double tol = 1e-10) const {
        return (flip_comultiplication(comul, dim()) - comul).norm() <= tol;
    }
};

/// Attaches Haar states to a bialgebra by solving the invariance systems.
inline FiniteQuantumGroup make_quantum_group(std::string name, StarAlgebra alg, CMatrix comul,
                                             const Tolerance& tol = {}) {
    const Index n = alg.dim();
    if (comul.rows() != n * n || comul.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "comultiplication must be n² × n");
    HaarSolution h = solve_haar(alg, comul, tol);
    return {std::move(name), std::move(alg), std::move(comul), h.phi, h.psi, h.left_nullity,
            h.right_nullity};
}

/// Residuals for Δ being a unital *-homomorphism and coassociative.
inline VerificationReport comultiplication_check(const StarAlgebra& alg, const CMatrix& comul,
                                                 double tol = 1e-10) {
    VerificationReport r;
    const Index n = alg.dim();
    double hom = 0.0, star = 0.0;
    std::vector<CVector> d(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = comul.col(i);
    for (Index i = 0; i < n; ++i) {
        CMatrix li = tensor_left_matrix(alg, d[static_cast<std::size_t>(i)]);
        for (Index j = 0; j < n; ++j) {
            CVector lhs = comul * alg.lmul(i).col(j);
            hom += (lhs - li * d[static_cast<std::size_t>(j)]).squaredNorm();
        }
        CVector lhs = comul * alg.involute(alg.basis(i));
        star += (lhs - tensor_involute(alg, d[static_cast<std::size_t>(i)])).squaredNorm();
    }
    r.add("comultiplication.homomorphism", "Δ(xy) = Δ(x)Δ(y)", std::sqrt(hom), tol);
    r.add("comultiplication.star", "Δ(x*) = Δ(x)*", std::sqrt(star), tol);
    r.add("comultiplication.unit", "Δ(1) = 1⊗1",
          (comul * alg.unit() - kron_vec(alg.unit(), alg.unit())).norm(), tol);
    const CMatrix id = identity(n);
    r.add("comultiplication.coassociativity", "(Δ⊗ι)Δ = (ι⊗Δ)Δ",
          (kron(comul, id) * comul - kron(id, comul) * comul).norm(), tol);
    return r;
}

inline VerificationReport comultiplication_check(const FiniteQuantumGroup& qg, double tol = 1e-10) {
    return comultiplication_check(qg.alg, qg.comul, tol);
}

/// Residuals of (ι⊗φ)Δ(x) = φ(x)1 and (ψ⊗ι)Δ(x) = ψ(x)1 over the basis,
/// plus the Haar nullities.
inline VerificationReport haar_check(const FiniteQuantumGroup& qg, double tol = 1e-10) {
    VerificationReport r;
    r.add("haar.left_invariance", "(ι⊗φ)Δ(x) = φ(x)1",
          (left_invariance_system(qg.alg, qg.comul) * qg.phi.w).norm(), tol);
    r.add("haar.right_invariance", "(ψ⊗ι)Δ(x) = ψ(x)1",
          (right_invariance_system(qg.alg, qg.comul) * qg.psi.w).norm(), tol);
    r.add_bool("haar.left_nullity", "left invariant weights are unique up to θ = rφ",
               qg.left_nullity == 1, "nullity " + std::to_string(qg.left_nullity));
    r.add_bool("haar.right_nullity", "right invariant weights are unique up to θ = rψ",
               qg.right_nullity == 1, "nullity " + std::to_string(qg.right_nullity));
    r.add("haar.normalized", "φ(1) = ψ(1) = 1",
          std::max(std::abs(qg.phi(qg.alg.unit()) - 1.0), std::abs(qg.psi(qg.alg.unit()) - 1.0)), tol);
    Positivity pl = positivity_check(qg.alg, qg.phi), pr = positivity_check(qg.alg, qg.psi);
    r.add_bool("haar.faithful", "φ, ψ positive and faithful",
               pl.positive && pl.faithful && pr.positive && pr.faithful);
    return r;
}

/// C(G): basis δ_g, pointwise product, Δ(δ_k) = Σ_g δ_g ⊗ δ_{g⁻¹k}.
inline FiniteQuantumGroup function_algebra(const GroupTable& g) {
    const Index n = g.order;
    std::vector<CMatrix> lmul(static_cast<std::size_t>(n), CMatrix::Zero(n, n));
    for (Index a = 0; a < n; ++a) lmul[static_cast<std::size_t>(a)](a, a) = 1.0;
    std::vector<std::string> labels;
    for (const auto& l : g.labels) labels.push_back("d" + l);
    StarAlgebra alg(std::move(lmul), identity(n), CVector::Ones(n), std::move(labels));
    CMatrix comul = CMatrix::Zero(n * n, n);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a) comul(a * n + g.mul(g.inv(a), k), k) = 1.0;
    return make_quantum_group("C(" + g.name + ")", std::move(alg), std::move(comul));
}

/// L(G): basis u_g, u_g u_h = u_{gh}, u_g* = u_{g⁻¹}, Δ(u_g) = u_g ⊗ u_g.
inline FiniteQuantumGroup group_algebra(const GroupTable& g) {
    const Index n = g.order;
    std::vector<CMatrix> lmul(static_cast<std::size_t>(n), CMatrix::Zero(n, n));
    CMatrix star = CMatrix::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) lmul[static_cast<std::size_t>(a)](g.mul(a, b), b) = 1.0;
        star(g.inv(a), a) = 1.0;
    }
    std::vector<std::string> labels;
    for (const auto& l : g.labels) labels.push_back("u" + l);
    StarAlgebra alg(std::move(lmul), std::move(star), CVector::Unit(n, g.identity), std::move(labels));
    CMatrix comul = CMatrix::Zero(n * n, n);
    for (Index a = 0; a < n; ++a) comul(a * n + a, a) = 1.0;
    return make_quantum_group("L(" + g.name + ")", std::move(alg), std::move(comul));
}

/// Algebra and comultiplication from sparse structure-constant data.
inline std::pair<StarAlgebra, CMatrix> bialgebra_from_spec(const QGSpecFile& s) {
    if (s.kind != SpecKind::StructureConstants)
        throw Error(ErrorKind::SpecInvalid, "expected structure_constants data");
    const Index n = s.dim;
    std::vector<CMatrix> lmul(static_cast<std::size_t>(n), CMatrix::Zero(n, n));
    for (const auto& e : s.product) lmul[static_cast<std::size_t>(e.i)](e.k, e.j) += e.value;
    CMatrix star = CMatrix::Zero(n, n);
    for (const auto& e : s.involution) star(e.j, e.i) += e.value;
    CVector unit = CVector::Zero(n);
    for (const auto& e : s.unit) unit(e.k) += e.value;
    CMatrix comul = CMatrix::Zero(n * n, n);
    for (const auto& e : s.comultiplication) comul(e.i * n + e.j, e.k) += e.value;
    return {StarAlgebra(std::move(lmul), std::move(star), std::move(unit), s.labels), std::move(comul)};
}

inline FiniteQuantumGroup from_structure_constants(const QGSpecFile& s) {
    auto [alg, comul] = bialgebra_from_spec(s);
    return make_quantum_group(s.label.empty() ? "custom" : s.label, std::move(alg), std::move(comul));
}

inline std::string kac_paljutkin_path() { return default_data_dir() + "/kac_paljutkin.json"; }

/// The 8-dimensional Kac–Paljutkin quantum group, algebra ℂ⁴ ⊕ M₂.
inline FiniteQuantumGroup kac_paljutkin(const std::string& path = kac_paljutkin_path()) {
    QGSpecFile s = load_spec(path);
    FiniteQuantumGroup qg = from_structure_constants(s);
    qg.name = "KP8";
    return qg;
}

}  // namespace vnqg
