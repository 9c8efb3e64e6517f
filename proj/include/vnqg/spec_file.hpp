#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vnqg/error.hpp"
#include "vnqg/numlin.hpp"

namespace vnqg {

using json = nlohmann::json;

enum class SpecKind { GroupFunction, GroupAlgebra, StructureConstants, KacPaljutkin };

inline std::string to_string(SpecKind k) {
    switch (k) {
    case SpecKind::GroupFunction: return "group_function";
    case SpecKind::GroupAlgebra: return "group_algebra";
    case SpecKind::StructureConstants: return "structure_constants";
    case SpecKind::KacPaljutkin: return "kac_paljutkin";
    }
    return "unknown";
}

struct ProductEntry {
    int i, j, k;
    cplx value;
};
struct InvolutionEntry {
    int i, j;
    cplx value;
};
struct UnitEntry {
    int k;
    cplx value;
};
/// Δ(e_k) contains value · e_i ⊗ e_j.
struct ComulEntry {
    int i, j, k;
    cplx value;
};

/// Versioned description of a finite quantum group.
struct QGSpecFile {
    static constexpr int kVersion = 1;

    int version = kVersion;
    SpecKind kind = SpecKind::GroupFunction;
    std::string label;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table;  // Cayley table for the group kinds
    int dim = 0;
    std::vector<ProductEntry> product;
    std::vector<InvolutionEntry> involution;
    std::vector<UnitEntry> unit;
    std::vector<ComulEntry> comultiplication;
};

namespace detail {

inline cplx read_complex(const json& re, const json& im) {
    if (!re.is_number() || !im.is_number())
        throw Error(ErrorKind::SpecInvalid, "complex entries must be (re, im) number pairs");
    return {re.get<double>(), im.get<double>()};
}

inline int read_index(const json& v, int bound, const char* what) {
    if (!v.is_number_integer())
        throw Error(ErrorKind::SpecInvalid, std::string(what) + " index is not an integer");
    int i = v.get<int>();
    if (i < 0 || i >= bound)
        throw Error(ErrorKind::SpecInvalid, std::string(what) + " index " + std::to_string(i) +
                                                " out of range [0, " + std::to_string(bound) + ")");
    return i;
}

inline const json& tuples(const json& j, const char* key, std::size_t width) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw Error(ErrorKind::SpecInvalid, std::string("missing array '") + key + "'");
    for (const auto& row : j.at(key))
        if (!row.is_array() || row.size() != width)
            throw Error(ErrorKind::SpecInvalid, std::string("entries of '") + key + "' must have " +
                                                    std::to_string(width) + " fields");
    return j.at(key);
}

}  // namespace detail

inline QGSpecFile parse_spec(const json& j) {
    if (!j.is_object()) throw Error(ErrorKind::SpecInvalid, "spec must be a JSON object");
    if (!j.contains("version") || !j.at("version").is_number_integer())
        throw Error(ErrorKind::SpecInvalid, "missing integer 'version'");
    QGSpecFile s;
    s.version = j.at("version").get<int>();
    if (s.version != QGSpecFile::kVersion)
        throw Error(ErrorKind::VersionUnsupported, "spec version " + std::to_string(s.version));
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw Error(ErrorKind::SpecInvalid, "missing string 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "group_function") s.kind = SpecKind::GroupFunction;
    else if (kind == "group_algebra") s.kind = SpecKind::GroupAlgebra;
    else if (kind == "structure_constants") s.kind = SpecKind::StructureConstants;
    else if (kind == "kac_paljutkin") s.kind = SpecKind::KacPaljutkin;
    else throw Error(ErrorKind::SpecInvalid, "unknown kind '" + kind + "'");
    s.label = j.value("label", std::string{});
    if (j.contains("labels")) {
        if (!j.at("labels").is_array()) throw Error(ErrorKind::SpecInvalid, "'labels' must be a list");
        for (const auto& l : j.at("labels")) {
            if (!l.is_string()) throw Error(ErrorKind::SpecInvalid, "labels must be strings");
            s.labels.push_back(l.get<std::string>());
        }
    }

    switch (s.kind) {
    case SpecKind::KacPaljutkin:
        break;
    case SpecKind::GroupFunction:
    case SpecKind::GroupAlgebra: {
        if (!j.contains("table") || !j.at("table").is_array() || j.at("table").empty())
            throw Error(ErrorKind::SpecInvalid, "group kinds need a nonempty 'table'");
        const auto& t = j.at("table");
        const int n = static_cast<int>(t.size());
        for (const auto& row : t) {
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                throw Error(ErrorKind::SpecInvalid, "Cayley table must be square");
            std::vector<int> r;
            for (const auto& v : row) r.push_back(detail::read_index(v, n, "table"));
            s.table.push_back(std::move(r));
        }
        s.dim = n;
        break;
    }
    case SpecKind::StructureConstants: {
        if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<int>() <= 0)
            throw Error(ErrorKind::SpecInvalid, "structure_constants needs a positive 'dim'");
        s.dim = j.at("dim").get<int>();
        const int n = s.dim;
        for (const auto& e : detail::tuples(j, "product", 5))
            s.product.push_back({detail::read_index(e[0], n, "product"),
                                 detail::read_index(e[1], n, "product"),
                                 detail::read_index(e[2], n, "product"),
                                 detail::read_complex(e[3], e[4])});
        for (const auto& e : detail::tuples(j, "involution", 4))
            s.involution.push_back({detail::read_index(e[0], n, "involution"),
                                    detail::read_index(e[1], n, "involution"),
                                    detail::read_complex(e[2], e[3])});
        for (const auto& e : detail::tuples(j, "unit", 3))
            s.unit.push_back({detail::read_index(e[0], n, "unit"), detail::read_complex(e[1], e[2])});
        for (const auto& e : detail::tuples(j, "comultiplication", 5))
            s.comultiplication.push_back({detail::read_index(e[0], n, "comultiplication"),
                                          detail::read_index(e[1], n, "comultiplication"),
                                          detail::read_index(e[2], n, "comultiplication"),
                                          detail::read_complex(e[3], e[4])});
        break;
    }
    }
    if (!s.labels.empty() && s.kind != SpecKind::KacPaljutkin &&
        static_cast<int>(s.labels.size()) != s.dim)
        throw Error(ErrorKind::SpecInvalid, "label count differs from dimension");
    return s;
}

inline json spec_to_json(const QGSpecFile& s) {
    json j;
    j["version"] = s.version;
    j["kind"] = to_string(s.kind);
    if (!s.label.empty()) j["label"] = s.label;
    if (!s.labels.empty()) j["labels"] = s.labels;
    switch (s.kind) {
    case SpecKind::KacPaljutkin:
        break;
    case SpecKind::GroupFunction:
    case SpecKind::GroupAlgebra:
        j["table"] = s.table;
        break;
    case SpecKind::StructureConstants: {
        j["dim"] = s.dim;
        json p = json::array(), inv = json::array(), u = json::array(), c = json::array();
        for (const auto& e : s.product) p.push_back({e.i, e.j, e.k, e.value.real(), e.value.imag()});
        for (const auto& e : s.involution) inv.push_back({e.i, e.j, e.value.real(), e.value.imag()});
        for (const auto& e : s.unit) u.push_back({e.k, e.value.real(), e.value.imag()});
        for (const auto& e : s.comultiplication)
            c.push_back({e.i, e.j, e.k, e.value.real(), e.value.imag()});
        j["product"] = p;
        j["involution"] = inv;
        j["unit"] = u;
        j["comultiplication"] = c;
        break;
    }
    }
    return j;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::SpecInvalid, "'" + path + "' is not valid JSON: " + e.what());
    }
}

inline QGSpecFile load_spec(const std::string& path) { return parse_spec(read_json_file(path)); }

inline std::string default_data_dir() {
#ifdef VNQG_DATA_DIR
    return VNQG_DATA_DIR;
#else
    return "data";
#endif
}

}  // namespace vnqg
