#pragma once

#include "canonical.hpp"
#include "equivalence.hpp"
#include "trajectory.hpp"
#include "types.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace ltieq {

using Json = nlohmann::ordered_json;

/// A system file: matrices plus an optional human-readable label.
struct ParsedSystem {
    ObservedSystem sys;
    std::string label;
};

inline Matrix matrix_from_json(const Json& j, const std::string& name) {
    if (!j.is_array()) throw ParseError("field '" + name + "' must be an array of rows");
    const auto rows = static_cast<Index>(j.size());
    Index cols = -1;
    for (const auto& row : j) {
        if (!row.is_array()) throw ParseError("field '" + name + "' must contain array rows");
        if (cols < 0) cols = static_cast<Index>(row.size());
        if (static_cast<Index>(row.size()) != cols)
            throw ParseError("field '" + name + "' has ragged rows");
    }
    if (rows == 0 || cols <= 0) throw ParseError("field '" + name + "' must be a nonempty matrix");
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index k = 0; k < cols; ++k) {
            const auto& v = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            if (!v.is_number()) throw ParseError("field '" + name + "' must contain only numbers");
            m(i, k) = v.get<double>();
        }
    if (!all_finite(m)) throw ValueError("field '" + name + "' must be finite");
    return m;
}

inline ParsedSystem parse_system_text(const std::string& text, const std::string& origin) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": malformed JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("A") || !j.contains("C"))
        throw ParseError(origin + ": expected an object with fields 'A' and 'C'");
    ParsedSystem out;
    out.sys.A = matrix_from_json(j["A"], "A");
    out.sys.C = matrix_from_json(j["C"], "C");
    out.sys.validate();
    out.label = j.value("label", origin);
    return out;
}

inline ParsedSystem parse_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open system file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_text(buf.str(), path);
}

inline Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const InvariantSignature& s) {
    Json j;
    j["n0"] = s.n0;
    j["nPlus"] = s.nPlus;
    j["nMinus"] = s.nMinus;
    j["kObs"] = s.kObs;
    j["k0"] = s.k0;
    j["kPlus"] = s.kPlus;
    j["kMinus"] = s.kMinus;
    return j;
}

inline Json to_json(const EquivalenceVerdict& v) {
    Json j;
    j["relation"] = v.relation == EquivalenceVerdict::Relation::Linear ? "linear" : "topological";
    j["equivalent"] = v.equivalent;
    j["reason"] = to_string(v.reason);
    if (!v.detail.empty()) j["detail"] = v.detail;
    if (v.witness) j["witness"] = to_json(*v.witness);
    j["confidence"] = v.deterministic ? "deterministic" : "randomized";
    if (!v.deterministic) j["failureBound"] = v.failureBound;
    return j;
}

inline Json to_json(const CanonicalForm& cf) {
    Json j;
    j["Nhat"] = to_json(cf.Nhat);
    j["Khat"] = to_json(cf.Khat);
    j["Bhat"] = to_json(cf.Bhat);
    j["Dhat"] = to_json(cf.Dhat);
    j["Ehat"] = to_json(cf.Ehat);
    j["assembledA"] = to_json(cf.assembledA);
    j["assembledC"] = to_json(cf.assembledC);
    j["centerIsCanonical"] = cf.centerIsCanonical;
    return j;
}

inline Json to_json(const ToleranceConfig& cfg) {
    Json j;
    j["tolSpec"] = cfg.tolSpec;
    j["tolRank"] = cfg.tolRank;
    j["tolResidual"] = cfg.tolResidual;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    return j;
}

/// A CLI report: fixed field order (command, inputs, config, warnings,
/// payload) for byte-deterministic output.
struct Report {
    std::string command;
    std::vector<std::string> inputs;
    ToleranceConfig config;
    std::vector<std::string> warnings;
    Json payload = Json::object();

    Json to_ordered_json() const {
        Json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["config"] = to_json(config);
        j["warnings"] = warnings;
        j["payload"] = payload;
        return j;
    }

    std::string render_json() const { return to_ordered_json().dump(2) + "\n"; }
};

inline InvariantSignature signature_from_json(const Json& j) {
    InvariantSignature s;
    s.n0 = j.at("n0").get<Index>();
    s.nPlus = j.at("nPlus").get<Index>();
    s.nMinus = j.at("nMinus").get<Index>();
    s.kObs = j.at("kObs").get<Index>();
    s.k0 = j.at("k0").get<Index>();
    s.kPlus = j.at("kPlus").get<Index>();
    s.kMinus = j.at("kMinus").get<Index>();
    return s;
}

namespace detail {

/// Plain-text matrix rendering for --output text.
inline void append_matrix_text(std::ostream& os, const std::string& name, const Matrix& m) {
    os << name << " (" << m.rows() << "x" << m.cols() << ")";
    if (m.size() == 0) {
        os << " []\n";
        return;
    }
    os << "\n";
    for (Index i = 0; i < m.rows(); ++i) {
        os << "  ";
        for (Index j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << "\n";
    }
}

inline void render_text_node(std::ostream& os, const std::string& key, const Json& v, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (v.is_object()) {
        os << pad << key << ":\n";
        for (const auto& [k, child] : v.items()) render_text_node(os, k, child, depth + 1);
    } else {
        os << pad << key << ": " << v.dump() << "\n";
    }
}

}  // namespace detail

inline std::string render_text(const Report& r) {
    std::ostringstream os;
    os << "command: " << r.command << "\n";
    for (const auto& in : r.inputs) os << "input: " << in << "\n";
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    for (const auto& [k, v] : r.payload.items()) detail::render_text_node(os, k, v, 0);
    return os.str();
}

}  // namespace ltieq
