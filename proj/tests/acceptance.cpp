#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "vnqg/io.hpp"

using namespace vnqg;

namespace {

struct Case {
    std::string name;
    QuantumGroupSide s;
    DualQuantumGroup d;
};

/// Worst residual and the case that produced it.
struct Worst {
    double value = 0.0;
    std::string where;

    void take(double v, const std::string& name) {
        if (!(v <= value)) {
            value = v;
            where = name;
        }
    }
};

int failures = 0;

void line(int id, const std::string& title, bool pass, const std::string& detail) {
    std::printf("[%s] %2d %-32s %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

void threshold_line(int id, const std::string& title, const Worst& w, double tol) {
    line(id, title, w.value <= tol, "worst " + fmt(w.value) + " <= " + fmt(tol) + (w.where.empty() ? "" : " (" + w.where + ")"));
}

double record_worst(const VerificationReport& r, const std::vector<std::string>& ids) {
    double w = 0.0;
    for (const auto& id : ids) {
        auto recs = r.select(id);
        if (recs.empty()) return INFINITY;
        w = std::max(w, r.worst(id));
    }
    return w;
}

}  // namespace

int main() {
    const std::string dir = default_data_dir();
    std::vector<Case> cases;
    for (const char* f : {"trivial", "z2", "z3", "z4", "s3", "q8", "kac_paljutkin"}) {
        QuantumGroupSide s = build_side(build_from_spec(load_spec(dir + "/" + f + ".json")));
        DualQuantumGroup d = build_dual(s);
        QuantumGroupSide ds = d.side;
        DualQuantumGroup dd = build_dual(ds);
        std::string name = s.qg.name;
        cases.push_back({name, std::move(s), std::move(d)});
        cases.push_back({"dual(" + name + ")", std::move(ds), std::move(dd)});
    }
    std::printf("acceptance over %zu quantum groups\n", cases.size());

    Worst c1, c2, c4, c5, c6, c7, c7nu, c8, c9a, c9l, c9p, c11, c12;
    int haar_bad = 0, inter_bad = 0;
    std::string haar_where, inter_where;
    for (const auto& c : cases) {
        const QuantumGroupSide& s = c.s;
        const DualQuantumGroup& d = c.d;
        const Index n = s.dim();
        const CMatrix id = identity(n);
        const CMatrix sigma = flip(n);

        for (const CMatrix* u : {&s.W, &s.V, &d.side.W, &d.side.V}) c1.take(pentagon_residual(*u, n), c.name);

        for (Index k = 0; k < n; ++k) {
            const CMatrix& x = s.g.pi[static_cast<std::size_t>(k)];
            CMatrix dx = pi_tensor(s.g, s.qg.comul.col(k));
            c2.take((dx - s.W.adjoint() * kron(id, x) * s.W).norm(), c.name);
            c2.take((dx - s.V * kron(x, id) * s.V.adjoint()).norm(), c.name);
        }

        if (s.qg.left_nullity != 1 || s.qg.right_nullity != 1) {
            ++haar_bad;
            haar_where = c.name;
        }

        InvarianceConfig ic{{1, 2, 3}, 20, 1};
        VerificationReport inv = strong_invariance_suite(s, d.basis, ic, 1e-10);
        c4.take(record_worst(inv, {"invariance.k1", "invariance.k2", "invariance.k3"}), c.name);

        c5.take(record_worst(strong_invariance_check(s.qg, s.a, s.qg.psi, 1e-10), {"strong_invariance.left"}), c.name);

        const AntilinearOp& J = s.md.J;
        const AntilinearOp& Jh = d.side.md.J;
        CMatrix flipped = sigma * s.W.adjoint() * sigma;
        c6.take((d.side.md.T.sharp().mat - s.pg.G.mat).norm(), c.name);
        c6.take((d.side.md.nabla - s.pg.N.inverse()).norm(), c.name);
        c6.take((Jh.mat - s.pg.I.mat).norm(), c.name);
        c6.take((d.side.W - flipped).norm(), c.name);
        c6.take((s.V - kron(Jh, Jh).conjugate_linear(flipped)).norm(), c.name);
        c6.take((d.side.V - kron(J, J).conjugate_linear(s.W)).norm(), c.name);

        double jg = 0.0;
        for (Index k = 0; k < n; ++k) {
            CVector lhs = Jh.apply(s.rw.gamma.col(k));
            CVector rhs = s.g.lambda * s.qg.alg.involute(s.a.R.col(k));
            jg = std::max(jg, (lhs - rhs).norm());
        }
        c7.take(jg, c.name);
        cplx phase = std::pow(cplx(s.nu.nu), 0.25 * kI);
        c7.take((Jh.compose(J) - phase * J.compose(Jh)).norm(), c.name);
        c7nu.take(std::abs(s.nu.nu - 1.0), c.name);

        VerificationReport com = commutation_table(commutation_inputs(s, d), 1e-9);
        c8.take(com.worst("commutation."), c.name);

        VerificationReport pon = pontryagin_check(s, d);
        c9a.take(record_worst(pon, {"pontryagin.algebra"}), c.name);
        c9l.take(record_worst(pon, {"pontryagin.lambda"}), c.name);
        c9p.take(record_worst(pon, {"pontryagin.phi"}), c.name);

        Index k = intersection_check(s, d);
        if (k != 1) {
            ++inter_bad;
            inter_where = c.name + " dim " + std::to_string(k);
        }

        VerificationReport var = variants_suite(s, d, build_variants(s, d));
        c11.take(record_worst(var, {"variants.dual_of_op.", "variants.dual_of_comm.", "variants.comm_op.",
                                    "variants.Phi_intertwines"}),
                 c.name);

        VerificationReport pre = predual_check(s, d.maps, 1e-10, 7, 20);
        c12.take(record_worst(pre, {"predual.lambda_multiplicative", "predual.lambda_star", "predual.xi_module"}),
                 c.name);
    }

    threshold_line(1, "pentagon W, W^, V, V^", c1, 1e-10);
    threshold_line(2, "comultiplication implemented", c2, 1e-10);
    line(3, "Haar uniqueness", haar_bad == 0,
         haar_bad == 0 ? "left and right nullity 1 on every example" : std::to_string(haar_bad) + " bad, e.g. " + haar_where);
    threshold_line(4, "strengthened invariance", c4, 1e-10);
    threshold_line(5, "strong left invariance", c5, 1e-10);
    threshold_line(6, "dual reconciliation", c6, 1e-9);
    line(7, "J^ Gamma = Lambda R and phase", c7.value <= 1e-10 && c7nu.value <= 1e-10,
         "worst " + fmt(c7.value) + " <= 1.00e-10, |nu - 1| " + fmt(c7nu.value) + " <= 1.00e-10");
    threshold_line(8, "commutation table", c8, 1e-9);
    line(9, "Pontryagin", c9a.value <= 0.5 && c9l.value <= 1e-9 && c9p.value <= 1e-10,
         std::string("algebra ") + (c9a.value <= 0.5 ? "equal" : "differs (" + c9a.where + ")") + ", Lambda " +
             fmt(c9l.value) + " <= 1.00e-09, phi " + fmt(c9p.value) + " <= 1.00e-10");
    line(10, "M meets M^ in scalars", inter_bad == 0,
         inter_bad == 0 ? "intersection dimension 1 on every example" : inter_where);
    threshold_line(11, "variants", c11, 1e-9);
    threshold_line(12, "predual algebra", c12, 1e-10);

    // Defect fixtures.
    std::vector<std::string> missed;
    PipelineResult broken = run_pipeline(load_spec(dir + "/broken_involution.json"));
    if (broken.failed_stage != "axioms") missed.push_back("broken involution");

    PipelineResult z2 = run_pipeline(load_spec(dir + "/z2.json"));
    json exported = export_json(z2);
    exported["side"]["W"]["data"][5][0] = 0.5;
    bool rejected = false;
    try {
        import_json(exported);
    } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::ValidationFailed;
    }
    CMatrix tampered = z2.side->W;
    tampered(1, 1) += 0.5;
    if (!rejected || pentagon_residual(tampered, 2) <= 1e-10) missed.push_back("tampered W");

    const Case& s3 = *std::find_if(cases.begin(), cases.end(), [](const Case& c) { return c.name == "C(S3)"; });
    CommutationInputs fake = commutation_inputs(s3.s, s3.d);
    std::mt19937_64 rng(9);
    CMatrix g = CMatrix::Zero(6, 6);
    std::normal_distribution<double> nd;
    for (Index i = 0; i < 6; ++i)
        for (Index j = 0; j < 6; ++j) g(i, j) = cplx(nd(rng), nd(rng));
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix u = qr.householderQ();
    CVector diag = CVector::LinSpaced(6, 1.0, 6.0);
    fake.delta = u * diag.asDiagonal() * u.adjoint();
    if (commutation_table(fake, 1e-9).all_pass("commutation.com4")) missed.push_back("fake delta");
    line(13, "injected defects detected", missed.empty(),
         missed.empty() ? "broken involution, tampered W, fake delta all fail loudly"
                        : "undetected: " + missed.front());

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
