#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vnqg/error.hpp"
#include "vnqg/pipeline.hpp"
#include "vnqg/report.hpp"
#include "vnqg/spec_file.hpp"

namespace vnqg {

inline constexpr int kExportVersion = 1;
inline constexpr const char* kExportFormat = "vnqg-export";

/// Matrices as {"rows", "cols", "data"} with row-major (re, im) pairs.
inline json matrix_to_json(const CMatrix& m) {
    json data = json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline CMatrix matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw Error(ErrorKind::SpecInvalid, "'" + what + "' is not a matrix object");
    const Index rows = j.at("rows").get<Index>(), cols = j.at("cols").get<Index>();
    const json& data = j.at("data");
    if (rows < 0 || cols < 0 || !data.is_array() || static_cast<Index>(data.size()) != rows * cols)
        throw Error(ErrorKind::SpecInvalid, "'" + what + "' has inconsistent size");
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j2 = 0; j2 < cols; ++j2) {
            const json& e = data.at(static_cast<std::size_t>(i * cols + j2));
            if (!e.is_array() || e.size() != 2)
                throw Error(ErrorKind::SpecInvalid, "'" + what + "' entries must be (re, im) pairs");
            m(i, j2) = detail::read_complex(e[0], e[1]);
        }
    return m;
}

inline json vector_to_json(const CVector& v) { return matrix_to_json(v); }
inline CVector vector_from_json(const json& j, const std::string& what) {
    CMatrix m = matrix_from_json(j, what);
    if (m.cols() != 1) throw Error(ErrorKind::SpecInvalid, "'" + what + "' is not a column vector");
    return m.col(0);
}

/// Operator data of one side (a quantum group realized on its GNS space).
struct SideExport {
    CVector phi, psi;
    CMatrix gram, lambda, W, V, nabla, J, N, I, delta;
    double nu = 1.0;
    std::vector<CMatrix> basis;  // π(e_k)
};

inline SideExport side_export(const QuantumGroupSide& s) {
    return {s.qg.phi.w, s.qg.psi.w, s.g.gram, s.g.lambda, s.W, s.V, s.md.nabla, s.md.J.mat,
            s.pg.N, s.pg.I.mat, s.delta.delta_op, s.nu.nu, s.g.pi};
}

inline json side_to_json(const SideExport& e) {
    json basis = json::array();
    for (const auto& b : e.basis) basis.push_back(matrix_to_json(b));
    return {{"phi", vector_to_json(e.phi)},   {"psi", vector_to_json(e.psi)}, {"gram", matrix_to_json(e.gram)},
            {"lambda", matrix_to_json(e.lambda)}, {"W", matrix_to_json(e.W)},   {"V", matrix_to_json(e.V)},
            {"nabla", matrix_to_json(e.nabla)}, {"J", matrix_to_json(e.J)},     {"N", matrix_to_json(e.N)},
            {"I", matrix_to_json(e.I)},         {"delta", matrix_to_json(e.delta)}, {"nu", e.nu},
            {"basis", std::move(basis)}};
}

inline SideExport side_from_json(const json& j, const std::string& where) {
    auto need = [&](const char* key) -> const json& {
        if (!j.contains(key)) throw Error(ErrorKind::SpecInvalid, where + " lacks '" + key + "'");
        return j.at(key);
    };
    SideExport e;
    e.phi = vector_from_json(need("phi"), where + ".phi");
    e.psi = vector_from_json(need("psi"), where + ".psi");
    e.gram = matrix_from_json(need("gram"), where + ".gram");
    e.lambda = matrix_from_json(need("lambda"), where + ".lambda");
    e.W = matrix_from_json(need("W"), where + ".W");
    e.V = matrix_from_json(need("V"), where + ".V");
    e.nabla = matrix_from_json(need("nabla"), where + ".nabla");
    e.J = matrix_from_json(need("J"), where + ".J");
    e.N = matrix_from_json(need("N"), where + ".N");
    e.I = matrix_from_json(need("I"), where + ".I");
    e.delta = matrix_from_json(need("delta"), where + ".delta");
    if (!need("nu").is_number()) throw Error(ErrorKind::SpecInvalid, where + ".nu is not a number");
    e.nu = j.at("nu").get<double>();
    if (!need("basis").is_array()) throw Error(ErrorKind::SpecInvalid, where + ".basis is not a list");
    for (const auto& b : j.at("basis")) e.basis.push_back(matrix_from_json(b, where + ".basis"));
    return e;
}

/// Reconstructed pipeline state. Absent sections are empty optionals.
struct ExportedQG {
    QGSpecFile spec;
    std::optional<SideExport> side;
    std::optional<SideExport> dual;
};

inline json export_json(const PipelineResult& p) {
    json j;
    j["format"] = kExportFormat;
    j["version"] = kExportVersion;
    j["spec"] = spec_to_json(p.spec);
    j["side"] = p.side ? side_to_json(side_export(*p.side)) : json{{"absent", true}};
    j["dual"] = p.dual ? side_to_json(side_export(p.dual->side)) : json{{"absent", true}};
    return j;
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

inline void export_qg(const PipelineResult& p, const std::string& path) { write_text(path, export_json(p).dump(1)); }

/// Fast re-validation: the algebra axioms and comultiplication of the input,
/// and unitarity of every stored W and V. ValidationFailed names the check.
inline void revalidate(const ExportedQG& e, double tol = 1e-10) {
    Bialgebra b = bialgebra_from_file(e.spec);
    VerificationReport r;
    r.merge(axioms_check(b.alg, tol));
    r.merge(comultiplication_check(b.alg, b.comul, tol));
    for (const auto& c : r.records())
        if (!c.pass) throw Error(ErrorKind::ValidationFailed, "imported spec fails " + c.check_id);
    auto unitary = [&](const std::optional<SideExport>& s, const std::string& which) {
        if (!s) return;
        const Index n = b.alg.dim();
        if (s->W.rows() != n * n || s->W.cols() != n * n || s->V.rows() != n * n || s->V.cols() != n * n)
            throw Error(ErrorKind::ValidationFailed, which + " unitaries have the wrong size");
        double dw = unitarity_defect(s->W), dv = unitarity_defect(s->V);
        if (!(dw <= tol)) throw Error(ErrorKind::ValidationFailed, which + ".W is not unitary, defect " + std::to_string(dw));
        if (!(dv <= tol)) throw Error(ErrorKind::ValidationFailed, which + ".V is not unitary, defect " + std::to_string(dv));
    };
    unitary(e.side, "side");
    unitary(e.dual, "dual");
}

inline ExportedQG import_json(const json& j, double tol = 1e-10) {
    if (!j.is_object() || j.value("format", std::string{}) != kExportFormat)
        throw Error(ErrorKind::SpecInvalid, "not a vnqg export");
    if (!j.contains("version") || !j.at("version").is_number_integer())
        throw Error(ErrorKind::SpecInvalid, "export lacks an integer version");
    if (j.at("version").get<int>() != kExportVersion)
        throw Error(ErrorKind::VersionUnsupported, "export version " + std::to_string(j.at("version").get<int>()));
    ExportedQG e;
    e.spec = parse_spec(j.at("spec"));
    for (const char* key : {"side", "dual"}) {
        if (!j.contains(key)) throw Error(ErrorKind::SpecInvalid, std::string("export lacks '") + key + "'");
        const json& s = j.at(key);
        if (s.value("absent", false)) continue;
        (std::string(key) == "side" ? e.side : e.dual) = side_from_json(s, key);
    }
    revalidate(e, tol);
    return e;
}

inline ExportedQG import_qg(const std::string& path, double tol = 1e-10) { return import_json(read_json_file(path), tol); }

/// Stored operators against a fresh pipeline run on the stored spec, plus
/// the Pontryagin checks of that run.
inline VerificationReport recheck_import(const ExportedQG& e, const PipelineConfig& cfg = {}) {
    VerificationReport r;
    const Thresholds th = cfg.thresholds();
    QuantumGroupSide s = build_side(build_from_spec(e.spec));
    r.set_example_id(s.qg.name);
    auto compare = [&](const std::string& id, const SideExport& x, const QuantumGroupSide& y) {
        SideExport f = side_export(y);
        double res = 0.0;
        for (auto [a, b] : {std::pair{&x.W, &f.W}, {&x.V, &f.V}, {&x.lambda, &f.lambda}, {&x.nabla, &f.nabla},
                            {&x.J, &f.J}, {&x.N, &f.N}, {&x.I, &f.I}, {&x.delta, &f.delta}, {&x.gram, &f.gram}})
            res = std::max(res, a->rows() == b->rows() && a->cols() == b->cols() ? (*a - *b).norm() : INFINITY);
        r.add("import." + id, "stored operators agree with a fresh build", res, th.loose);
    };
    DualQuantumGroup d = build_dual(s);
    if (e.side) compare("side", *e.side, s);
    if (e.dual) compare("dual", *e.dual, d.side);
    r.merge(pontryagin_check(s, d, th));
    return r;
}

// Report emission.

inline json record_to_json(const CheckRecord& c) {
    json j{{"check_id", c.check_id}, {"paper_anchor", c.paper_anchor},
           {"residual", std::isnan(c.residual) ? json(nullptr) : json(c.residual)},
           {"tolerance", c.tolerance}, {"pass", c.pass}, {"example_id", c.example_id}};
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline json report_to_json(const VerificationReport& r, bool timings = true) {
    json records = json::array();
    for (const auto& c : r.records()) records.push_back(record_to_json(c));
    json j{{"example_id", r.example_id()},
           {"records", std::move(records)},
           {"summary", {{"total", r.size()}, {"passed", r.passed()}, {"failed", r.failed()}}}};
    if (timings) j["timings"] = r.timings();
    return j;
}

inline VerificationReport report_from_json(const json& j) {
    if (!j.is_object() || !j.contains("records") || !j.at("records").is_array())
        throw Error(ErrorKind::SpecInvalid, "report lacks a 'records' list");
    VerificationReport r;
    for (const auto& c : j.at("records")) {
        const json& res = c.at("residual");
        r.add(c.at("check_id").get<std::string>(), c.at("paper_anchor").get<std::string>(),
              res.is_null() ? std::nan("") : res.get<double>(), c.at("tolerance").get<double>(),
              c.value("note", std::string{}));
    }
    r.set_example_id(j.value("example_id", std::string{}));
    if (j.contains("timings"))
        for (const auto& [k, v] : j.at("timings").items()) r.add_timing(k, v.get<double>());
    return r;
}

/// Module of a check id: its first dotted component.
inline std::string check_group(const std::string& id) { return id.substr(0, id.find('.')); }

inline std::string format_residual(double v) {
    if (std::isnan(v)) return "skipped";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline std::string report_to_text(const VerificationReport& r) {
    struct Group {
        std::size_t total = 0, failed = 0;
        double worst = 0.0;
    };
    std::map<std::string, Group> groups;
    for (const auto& c : r.records()) {
        Group& g = groups[check_group(c.check_id)];
        ++g.total;
        if (!c.pass) ++g.failed;
        g.worst = std::max(g.worst, std::isnan(c.residual) ? INFINITY : c.residual);
    }
    std::ostringstream out;
    out << "example " << (r.example_id().empty() ? "-" : r.example_id()) << ": " << r.size() << " checks, "
        << r.passed() << " passed, " << r.failed() << " failed\n";
    char line[160];
    std::snprintf(line, sizeof line, "  %-22s %7s %7s  %s\n", "group", "checks", "failed", "worst residual");
    out << line;
    for (const auto& [name, g] : groups) {
        std::snprintf(line, sizeof line, "  %-22s %7zu %7zu  %s\n", name.c_str(), g.total, g.failed,
                      std::isinf(g.worst) ? "skipped" : format_residual(g.worst).c_str());
        out << line;
    }
    if (r.failed() > 0) {
        out << "failures:\n";
        for (const auto& c : r.records())
            if (!c.pass)
                out << "  " << c.check_id << "  residual " << format_residual(c.residual) << " > "
                    << format_residual(c.tolerance) << "  [" << c.paper_anchor << "]"
                    << (c.note.empty() ? "" : "  " + c.note) << "\n";
    }
    if (!r.timings().empty()) {
        out << "timings:";
        for (const auto& [stage, t] : r.timings()) {
            std::snprintf(line, sizeof line, " %s %.3fs", stage.c_str(), t);
            out << line;
        }
        out << "\n";
    }
    return out.str();
}

enum class ReportFormat { Json, Text };

inline std::string emit_report(const VerificationReport& r, ReportFormat f, bool timings = true) {
    return f == ReportFormat::Json ? report_to_json(r, timings).dump(2) + "\n" : report_to_text(r);
}

}  // namespace vnqg
