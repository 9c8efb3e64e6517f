#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "vnqg/io.hpp"

using namespace vnqg;

namespace {

struct Options {
    std::string spec;
    std::string in;
    std::string out;
    std::string report;
    std::string format = "text";
    double tol = 1e-10;
    std::uint64_t seed = 1;
    std::vector<int> kdims{1, 2, 3};
    int batch = 20;
    bool recheck = false;
};

PipelineConfig config(const Options& o) {
    PipelineConfig c;
    c.tol = o.tol;
    c.seed = o.seed;
    c.kdims.assign(o.kdims.begin(), o.kdims.end());
    c.batch = o.batch;
    return c;
}

void emit(const Options& o, const std::string& text) {
    if (o.report.empty()) std::cout << text;
    else write_text(o.report, text);
}

int emit_report_exit(const Options& o, const VerificationReport& r) {
    emit(o, emit_report(r, o.format == "json" ? ReportFormat::Json : ReportFormat::Text));
    return r.all_pass() ? 0 : 1;
}

void print_summary(const QuantumGroupSide& s, std::ostream& out) {
    const FiniteQuantumGroup& qg = s.qg;
    out << qg.name << ": dim " << qg.dim() << ", " << (qg.alg.is_commutative() ? "commutative" : "noncommutative")
        << ", " << (qg.is_cocommutative() ? "cocommutative" : "not cocommutative") << "\n"
        << "  Haar nullities: left " << qg.left_nullity << ", right " << qg.right_nullity << "\n"
        << "  scaling constant ν = " << s.nu.nu << "\n"
        << "  W unitarity defect " << unitarity_defect(s.W) << ", pentagon residual " << pentagon_residual(s.W, s.dim())
        << "\n";
}

int cmd_build(const Options& o) {
    print_summary(build_side(build_from_spec(load_spec(o.spec))), std::cout);
    return 0;
}

int cmd_verify(const Options& o) {
    PipelineResult r = run_pipeline(load_spec(o.spec), config(o));
    return emit_report_exit(o, r.report);
}

int cmd_dualize(const Options& o) {
    QuantumGroupSide s = build_side(build_from_spec(load_spec(o.spec)));
    DualQuantumGroup d = build_dual(s);
    print_summary(d.side, std::cerr);
    std::string text = spec_to_json(spec_from_quantum_group(d.side.qg)).dump(2) + "\n";
    if (o.out.empty()) std::cout << text;
    else write_text(o.out, text);
    return 0;
}

int cmd_export(const Options& o) {
    PipelineResult r = run_pipeline(load_spec(o.spec), config(o));
    export_qg(r, o.out);
    std::cerr << "exported " << (r.side ? "side" : "spec only") << (r.dual ? " and dual" : "") << " to " << o.out
              << "\n";
    if (!r.failed_stage.empty()) std::cerr << "pipeline stopped at stage " << r.failed_stage << "\n";
    return r.ok() ? 0 : 1;
}

int cmd_import(const Options& o) {
    ExportedQG e = import_qg(o.in, o.tol);
    std::cerr << "import of " << o.in << " validated (" << (e.side ? "side" : "no side") << ", "
              << (e.dual ? "dual" : "no dual") << ")\n";
    if (!o.recheck) return 0;
    return emit_report_exit(o, recheck_import(e, config(o)));
}

int cmd_report(const Options& o) { return emit_report_exit(o, report_from_json(read_json_file(o.in))); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite quantum groups: construction, duality and verification"};
    app.require_subcommand(1);
    Options o;

    auto spec_opt = [&](CLI::App* c) { c->add_option("--spec", o.spec, "quantum group spec file")->required()->check(CLI::ExistingFile); };
    auto run_opts = [&](CLI::App* c) {
        c->add_option("--tol", o.tol, "base tolerance for single-path identities")->check(CLI::PositiveNumber);
        c->add_option("--seed", o.seed, "seed for sampled checks");
        c->add_option("--kdims", o.kdims, "ancilla dimensions for strong invariance")->delimiter(',');
        c->add_option("--batch", o.batch, "samples per ancilla dimension")->check(CLI::PositiveNumber);
    };
    auto report_opts = [&](CLI::App* c) {
        c->add_option("--report", o.report, "write the report here instead of stdout");
        c->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* build = app.add_subcommand("build", "build a quantum group and print its structure");
    spec_opt(build);
    CLI::App* verify = app.add_subcommand("verify", "run every suite and emit the report");
    spec_opt(verify);
    run_opts(verify);
    report_opts(verify);
    CLI::App* dualize = app.add_subcommand("dualize", "write the dual as a structure-constant spec");
    spec_opt(dualize);
    dualize->add_option("--out", o.out, "output spec path (stdout when absent)");
    CLI::App* exp = app.add_subcommand("export", "run the pipeline and persist all operators");
    spec_opt(exp);
    run_opts(exp);
    exp->add_option("--out", o.out, "export path")->required();
    CLI::App* imp = app.add_subcommand("import", "load an export and re-validate it");
    imp->add_option("--in", o.in, "export file")->required()->check(CLI::ExistingFile);
    imp->add_option("--tol", o.tol, "unitarity tolerance")->check(CLI::PositiveNumber);
    imp->add_flag("--recheck", o.recheck, "compare against a fresh build and rerun the Pontryagin checks");
    report_opts(imp);
    CLI::App* rep = app.add_subcommand("report", "render a saved JSON report");
    rep->add_option("--in", o.in, "JSON report")->required()->check(CLI::ExistingFile);
    report_opts(rep);

    CLI11_PARSE(app, argc, argv);
    try {
        if (build->parsed()) return cmd_build(o);
        if (verify->parsed()) return cmd_verify(o);
        if (dualize->parsed()) return cmd_dualize(o);
        if (exp->parsed()) return cmd_export(o);
        if (imp->parsed()) return cmd_import(o);
        if (rep->parsed()) return cmd_report(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
