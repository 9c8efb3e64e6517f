#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vnqg/duality.hpp"
#include "vnqg/error.hpp"
#include "vnqg/invariance.hpp"
#include "vnqg/qg_builders.hpp"
#include "vnqg/report.hpp"
#include "vnqg/spec_file.hpp"
#include "vnqg/variants.hpp"

namespace vnqg {

struct PipelineConfig {
    double tol = 1e-10;
    std::uint64_t seed = 1;
    std::vector<Index> kdims{1, 2, 3};
    int batch = 20;

    Thresholds thresholds() const { return Thresholds::from_base(tol); }
};

/// Unvalidated bialgebra read from a spec: no Haar weights yet.
struct Bialgebra {
    std::string name;
    StarAlgebra alg;
    CMatrix comul;
};

inline Bialgebra bialgebra_from_file(const QGSpecFile& s) {
    switch (s.kind) {
    case SpecKind::GroupFunction:
    case SpecKind::GroupAlgebra: {
        GroupTable t = GroupTable::from_table(s.table, s.labels, s.label.empty() ? "G" : s.label);
        FiniteQuantumGroup qg = s.kind == SpecKind::GroupFunction ? function_algebra(t) : group_algebra(t);
        return {qg.name, qg.alg, qg.comul};
    }
    case SpecKind::StructureConstants: {
        auto [alg, comul] = bialgebra_from_spec(s);
        return {s.label.empty() ? "custom" : s.label, std::move(alg), std::move(comul)};
    }
    case SpecKind::KacPaljutkin: {
        FiniteQuantumGroup qg = kac_paljutkin();
        return {qg.name, qg.alg, qg.comul};
    }
    }
    throw Error(ErrorKind::SpecInvalid, "unknown spec kind");
}

inline FiniteQuantumGroup build_from_spec(const QGSpecFile& s, const Tolerance& tol = {}) {
    Bialgebra b = bialgebra_from_file(s);
    return make_quantum_group(std::move(b.name), std::move(b.alg), std::move(b.comul), tol);
}

/// Sparse structure-constant spec of a quantum group; entries below
/// `cutoff` in modulus are dropped.
inline QGSpecFile spec_from_quantum_group(const FiniteQuantumGroup& qg, double cutoff = 1e-14) {
    QGSpecFile s;
    s.kind = SpecKind::StructureConstants;
    s.label = qg.name;
    s.labels = qg.alg.labels();
    const Index n = qg.dim();
    s.dim = static_cast<int>(n);
    auto keep = [&](cplx v) { return std::abs(v) > cutoff; };
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            for (Index k = 0; k < n; ++k)
                if (keep(qg.alg.c(i, j, k)))
                    s.product.push_back({int(i), int(j), int(k), qg.alg.c(i, j, k)});
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            if (keep(qg.alg.star()(j, i))) s.involution.push_back({int(i), int(j), qg.alg.star()(j, i)});
    for (Index k = 0; k < n; ++k)
        if (keep(qg.alg.unit()(k))) s.unit.push_back({int(k), qg.alg.unit()(k)});
    for (Index k = 0; k < n; ++k)
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                if (keep(qg.comul(i * n + j, k))) s.comultiplication.push_back({int(i), int(j), int(k), qg.comul(i * n + j, k)});
    return s;
}

/// Everything the pipeline built before it stopped.
struct PipelineResult {
    QGSpecFile spec;
    VerificationReport report;
    std::optional<FiniteQuantumGroup> qg;
    std::optional<QuantumGroupSide> side;
    std::optional<DualQuantumGroup> dual;
    std::optional<VariantData> variants;
    std::string failed_stage;

    bool ok() const { return failed_stage.empty() && report.all_pass(); }
};

inline const std::vector<std::string>& pipeline_stages() {
    static const std::vector<std::string> stages{
        "build",      "axioms",      "haar",           "side",        "dual",     "predual",
        "unitaries",  "duality",     "pontryagin",     "commutation", "intersection",
        "variants",   "invariance"};
    return stages;
}

/// build → axioms → Haar → GNS, W, G/N/I, antipode, ν, δ, V, P → dual →
/// suites. A stage that throws, or a gating stage with failing records,
/// stops the run; later stages are recorded as skipped.
inline PipelineResult run_pipeline(const QGSpecFile& spec, const PipelineConfig& cfg = {}) {
    PipelineResult out;
    out.spec = spec;
    const Thresholds th = cfg.thresholds();
    const std::string example = spec.label.empty() ? to_string(spec.kind) : spec.label;
    VerificationReport& r = out.report;
    r.set_example_id(example);
    Bialgebra bi;

    auto run = [&](const std::string& stage, bool gating, const std::function<void()>& body) {
        if (!out.failed_stage.empty()) {
            r.add_skipped("pipeline." + stage, "stage " + stage, "skipped: stage " + out.failed_stage + " failed");
            return;
        }
        const std::size_t before_failed = r.failed();
        auto t0 = std::chrono::steady_clock::now();
        try {
            body();
        } catch (const Error& e) {
            r.add_bool("pipeline." + stage, "stage " + stage, false, e.what());
            out.failed_stage = stage;
        } catch (const std::exception& e) {
            r.add_bool("pipeline." + stage, "stage " + stage, false, e.what());
            out.failed_stage = stage;
        }
        r.add_timing(stage, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        if (out.failed_stage.empty() && gating && r.failed() > before_failed) out.failed_stage = stage;
    };

    run("build", true, [&] { bi = bialgebra_from_file(spec); });
    run("axioms", true, [&] {
        r.merge(axioms_check(bi.alg, th.tight));
        r.merge(comultiplication_check(bi.alg, bi.comul, th.tight));
    });
    run("haar", true, [&] {
        out.qg = make_quantum_group(bi.name, bi.alg, bi.comul);
        r.set_example_id(out.qg->name);
        r.merge(haar_check(*out.qg, th.tight));
    });
    run("side", true, [&] {
        out.side = build_side(*out.qg);
        // Axioms and Haar records already came from the gating stages.
        const VerificationReport suite = side_suite(*out.side, th);
        for (const auto& c : suite.records())
            if (c.check_id.rfind("star_algebra.", 0) != 0 && c.check_id.rfind("comultiplication.", 0) != 0 &&
                c.check_id.rfind("haar.", 0) != 0)
                r.add(c.check_id, c.paper_anchor, c.residual, c.tolerance, c.note);
    });
    run("dual", true, [&] {
        out.dual = build_dual(*out.side);
        r.merge(dual_check(*out.side, *out.dual, th.tight, cfg.seed + 11));
        r.merge(side_suite(out.dual->side, th).prefixed("dual_side."));
    });
    run("predual", false, [&] { r.merge(predual_check(*out.side, out.dual->maps, th.tight, cfg.seed + 7)); });
    run("unitaries", false, [&] { r.merge(dual_unitaries(*out.side, *out.dual, th)); });
    run("duality", false, [&] { r.merge(duality_theorem_suite(*out.side, *out.dual, th)); });
    run("pontryagin", false, [&] { r.merge(pontryagin_check(*out.side, *out.dual, th)); });
    run("commutation", false,
        [&] { r.merge(commutation_table(commutation_inputs(*out.side, *out.dual), th.loose)); });
    run("intersection", false, [&] { r.merge(intersection_report(*out.side, *out.dual)); });
    run("variants", false, [&] {
        out.variants = build_variants(*out.side, *out.dual);
        r.merge(variants_suite(*out.side, *out.dual, *out.variants, th));
    });
    run("invariance", false, [&] {
        InvarianceConfig ic{cfg.kdims, cfg.batch, cfg.seed};
        r.merge(strong_invariance_suite(*out.side, out.dual->basis, ic, th.tight));
        r.merge(strong_invariance_suite(out.dual->side, out.side->g.pi, ic, th.tight, "dual_invariance"));
    });
    return out;
}

}  // namespace vnqg
