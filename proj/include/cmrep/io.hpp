#pragma once

// JSON documents for graphs, ribbon data and CM representations. Field order
// is fixed on output so exported documents can serve as golden files.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cmrep/cm_core.hpp"
#include "cmrep/errors.hpp"
#include "cmrep/exact_linalg.hpp"
#include "cmrep/fixtures.hpp"
#include "cmrep/graphs.hpp"
#include "cmrep/polynomials.hpp"
#include "cmrep/rational.hpp"

namespace cmrep {

using Json = nlohmann::ordered_json;

namespace detail {

// Line on which the value of each path ("lines[1].mass2") starts. Runs on text
// that already parsed, so the scanner can assume well-formed JSON.
inline std::map<std::string, int> json_path_lines(const std::string& text) {
    struct Frame {
        bool array;
        std::size_t index;
        std::string path;
        std::string key;
        bool expect_key;
    };
    std::map<std::string, int> lines;
    std::vector<Frame> stack;
    int line = 1;
    auto child_path = [&]() -> std::string {
        if (stack.empty()) return "";
        const auto& f = stack.back();
        if (f.array) return f.path + "[" + std::to_string(f.index) + "]";
        return f.path.empty() ? f.key : f.path + "." + f.key;
    };
    auto read_string = [&](std::size_t& i) {
        std::string s;
        for (++i; i < text.size() && text[i] != '"'; ++i) {
            if (text[i] == '\\' && i + 1 < text.size()) {
                s += text[++i];
                continue;
            }
            s += text[i];
        }
        return s;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == ':') continue;
        if (c == ',') {
            if (!stack.empty()) {
                if (stack.back().array)
                    ++stack.back().index;
                else
                    stack.back().expect_key = true;
            }
            continue;
        }
        if (c == '}' || c == ']') {
            if (!stack.empty()) stack.pop_back();
            continue;
        }
        if (c == '"' && !stack.empty() && !stack.back().array && stack.back().expect_key) {
            stack.back().key = read_string(i);
            stack.back().expect_key = false;
            continue;
        }
        const std::string path = child_path();
        lines.emplace(path, line);
        if (c == '{' || c == '[') {
            stack.push_back({c == '[', 0, path, {}, c == '{'});
        } else if (c == '"') {
            read_string(i);
        } else {
            while (i + 1 < text.size() && std::string(",]} \t\r\n").find(text[i + 1]) == std::string::npos) ++i;
        }
    }
    return lines;
}

}  // namespace detail

/// Parsed JSON plus enough context to name the offending key and line.
class JsonDocument {
public:
    JsonDocument(std::string text, std::string source) : text_(std::move(text)), source_(std::move(source)) {
        try {
            root_ = Json::parse(text_);
        } catch (const Json::parse_error& e) {
            throw ValidationError(source_ + ": malformed JSON: " + e.what());
        }
        lines_ = detail::json_path_lines(text_);
    }

    static JsonDocument from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot read input file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return JsonDocument(ss.str(), path);
    }

    const Json& root() const { return root_; }
    const std::string& source() const { return source_; }

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        std::string where = source_ + ": key '" + path + "'";
        // Point at the value, or at the enclosing object for a missing key.
        std::string probe = path;
        for (;;) {
            auto it = lines_.find(probe);
            if (it != lines_.end()) {
                where += " (line " + std::to_string(it->second) + ")";
                break;
            }
            auto cut = probe.find_last_of(".[");
            if (cut == std::string::npos) break;
            probe = probe.substr(0, cut);
        }
        throw ValidationError(where + ": " + message);
    }

    const Json& at(const Json& obj, const std::string& parent, const std::string& key) const {
        const std::string path = parent.empty() ? key : parent + "." + key;
        if (!obj.is_object()) fail(parent, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end()) fail(path, "missing required key");
        return *it;
    }

    Rational rational(const Json& v, const std::string& path) const {
        try {
            if (v.is_string()) return parse_rational(v.get<std::string>());
            if (v.is_number()) return parse_rational(v.dump());
        } catch (const ValidationError& e) {
            fail(path, e.what());
        }
        fail(path, "expected a rational (number or \"p/q\" string)");
    }

    long integer(const Json& v, const std::string& path) const {
        if (!v.is_number_integer()) fail(path, "expected an integer");
        return v.get<long>();
    }

    std::string string(const Json& v, const std::string& path) const {
        if (!v.is_string()) fail(path, "expected a string");
        return v.get<std::string>();
    }

    const Json& array(const Json& v, const std::string& path) const {
        if (!v.is_array()) fail(path, "expected an array");
        return v;
    }

    std::vector<std::vector<Rational>> matrix(const Json& v, const std::string& path) const {
        std::vector<std::vector<Rational>> out;
        std::size_t i = 0;
        for (const auto& row : array(v, path)) {
            const std::string rp = path + "[" + std::to_string(i++) + "]";
            std::vector<Rational> r;
            std::size_t j = 0;
            for (const auto& x : array(row, rp)) r.push_back(rational(x, rp + "[" + std::to_string(j++) + "]"));
            out.push_back(std::move(r));
        }
        return out;
    }

private:
    std::string text_;
    std::string source_;
    Json root_;
    std::map<std::string, int> lines_;
};

inline std::string document_kind(const JsonDocument& doc) {
    return doc.string(doc.at(doc.root(), "", "kind"), "kind");
}

// ---------------------------------------------------------------------------
// Graphs

struct GraphInput {
    std::string name;
    FeynmanGraph graph;
    std::map<std::string, Rational> invariant_values;
};

inline GraphInput graph_from_json(const JsonDocument& doc) {
    const Json& r = doc.root();
    if (document_kind(doc) != "graph") doc.fail("kind", "expected \"graph\"");
    GraphInput in;
    if (r.contains("name")) in.name = doc.string(r["name"], "name");

    std::vector<std::string> vertices;
    std::size_t i = 0;
    for (const auto& v : doc.array(doc.at(r, "", "vertices"), "vertices"))
        vertices.push_back(doc.string(v, "vertices[" + std::to_string(i++) + "]"));

    std::vector<Line> lines;
    i = 0;
    for (const auto& l : doc.array(doc.at(r, "", "lines"), "lines")) {
        const std::string p = "lines[" + std::to_string(i++) + "]";
        Line line;
        line.id = static_cast<int>(doc.integer(doc.at(l, p, "id"), p + ".id"));
        line.from = doc.string(doc.at(l, p, "from"), p + ".from");
        line.to = doc.string(doc.at(l, p, "to"), p + ".to");
        line.mass2 = l.contains("mass2") ? doc.rational(l["mass2"], p + ".mass2") : Rational(0);
        lines.push_back(std::move(line));
    }

    std::vector<ExternalLeg> legs;
    if (r.contains("external_legs")) {
        i = 0;
        for (const auto& l : doc.array(r["external_legs"], "external_legs")) {
            const std::string p = "external_legs[" + std::to_string(i++) + "]";
            legs.push_back({doc.string(doc.at(l, p, "vertex"), p + ".vertex"),
                            doc.string(doc.at(l, p, "label"), p + ".label")});
        }
    }

    std::vector<InvariantEntry> invariants;
    if (r.contains("invariants")) {
        i = 0;
        for (const auto& e : doc.array(r["invariants"], "invariants")) {
            const std::string p = "invariants[" + std::to_string(i++) + "]";
            InvariantEntry entry;
            entry.symbol = doc.string(doc.at(e, p, "symbol"), p + ".symbol");
            std::size_t k = 0;
            for (const auto& leg : doc.array(doc.at(e, p, "legs"), p + ".legs"))
                entry.legs.push_back(doc.string(leg, p + ".legs[" + std::to_string(k++) + "]"));
            invariants.push_back(std::move(entry));
        }
    }
    if (r.contains("invariant_values")) {
        const auto& vals = r["invariant_values"];
        if (!vals.is_object()) doc.fail("invariant_values", "expected an object");
        for (const auto& [k, v] : vals.items()) in.invariant_values[k] = doc.rational(v, "invariant_values." + k);
    }
    try {
        in.graph = FeynmanGraph(std::move(vertices), std::move(lines), std::move(legs), std::move(invariants));
    } catch (const ValidationError& e) {
        throw ValidationError(doc.source() + ": " + e.what());
    }
    return in;
}

inline Json graph_to_json(const GraphInput& in) {
    const auto& g = in.graph;
    Json j;
    j["kind"] = "graph";
    j["name"] = in.name;
    j["vertices"] = g.vertices();
    j["lines"] = Json::array();
    for (const auto& l : g.lines()) {
        Json e;
        e["id"] = l.id;
        e["from"] = l.from;
        e["to"] = l.to;
        e["mass2"] = to_string(l.mass2);
        j["lines"].push_back(e);
    }
    j["external_legs"] = Json::array();
    for (const auto& l : g.external_legs()) j["external_legs"].push_back(Json{{"label", l.label}, {"vertex", l.vertex}});
    j["invariants"] = Json::array();
    for (const auto& inv : g.invariants()) j["invariants"].push_back(Json{{"symbol", inv.symbol}, {"legs", inv.legs}});
    j["invariant_values"] = Json::object();
    for (const auto& [k, v] : in.invariant_values) j["invariant_values"][k] = to_string(v);
    return j;
}

// ---------------------------------------------------------------------------
// Ribbon data

struct RibbonInput {
    std::string name;
    RibbonData ribbon;
};

inline RibbonInput ribbon_from_json(const JsonDocument& doc) {
    const Json& r = doc.root();
    if (document_kind(doc) != "ribbon") doc.fail("kind", "expected \"ribbon\"");
    RibbonInput in;
    if (r.contains("name")) in.name = doc.string(r["name"], "name");
    auto& d = in.ribbon;
    const std::string model = doc.string(doc.at(r, "", "model"), "model");
    if (model == "GW")
        d.model = RibbonModel::GW;
    else if (model == "LSZ")
        d.model = RibbonModel::LSZ;
    else
        doc.fail("model", "expected \"GW\" or \"LSZ\"");
    auto nonneg = [&](const char* key) {
        long v = doc.integer(doc.at(r, "", key), key);
        if (v < 0) doc.fail(key, "must be >= 0");
        return v;
    };
    d.L = static_cast<std::size_t>(nonneg("L"));
    d.F = static_cast<std::size_t>(nonneg("F"));
    d.g = static_cast<int>(nonneg("g"));
    d.s = doc.rational(doc.at(r, "", "s"), "s");
    if (r.contains("parity_n")) d.parity_n = static_cast<int>(doc.integer(r["parity_n"], "parity_n"));
    try {
        d.B = AntisymMatrix::from_rows(doc.matrix(doc.at(r, "", "B"), "B"));
    } catch (const ValidationError& e) {
        doc.fail("B", e.what());
    }
    if (r.contains("P")) d.P = doc.matrix(r["P"], "P");
    if (r.contains("externals")) d.externals = doc.matrix(r["externals"], "externals");
    if (r.contains("prefactor")) d.prefactor = doc.rational(r["prefactor"], "prefactor");
    try {
        d.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(doc.source() + ": " + e.what());
    }
    return in;
}

namespace detail {

inline Json rational_matrix(const std::vector<std::vector<Rational>>& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        out.push_back(r);
    }
    return out;
}

}  // namespace detail

inline Json ribbon_to_json(const RibbonInput& in) {
    const auto& d = in.ribbon;
    Json j;
    j["kind"] = "ribbon";
    j["name"] = in.name;
    j["model"] = d.model == RibbonModel::GW ? "GW" : "LSZ";
    j["L"] = d.L;
    j["F"] = d.F;
    j["g"] = d.g;
    j["s"] = to_string(d.s);
    if (d.parity_n) j["parity_n"] = *d.parity_n;
    j["B"] = detail::rational_matrix(d.B.rows());
    j["P"] = detail::rational_matrix(d.P);
    j["externals"] = detail::rational_matrix(d.externals);
    j["prefactor"] = to_string(d.prefactor);
    return j;
}

// ---------------------------------------------------------------------------
// Polynomials

inline Json polynomial_to_json(const PolynomialSum& p) {
    Json j;
    j["kind"] = to_string(p.kind);
    j["num_lines"] = p.num_lines;
    j["monomials"] = Json::array();
    for (const auto& m : p.monomials) {
        Json e;
        e["coefficient"] = to_string(m.coefficient);
        e["symbol"] = m.symbol;
        e["exponents"] = m.exponents;
        e["origins"] = m.origins;
        j["monomials"].push_back(e);
    }
    return j;
}

// ---------------------------------------------------------------------------
// CM representation

inline const char* to_string(CmMode m) { return m == CmMode::commutative ? "commutative" : "noncommutative"; }

inline const char* to_string(VarKind k) {
    switch (k) {
        case VarKind::x: return "x";
        case VarKind::yR: return "yR";
        case VarKind::yI: return "yI";
    }
    return "?";
}

/// Constraint system of the Mellin domain with D kept symbolic.
inline std::vector<std::string> domain_constraint_text(const CMRep& cm) {
    std::vector<std::string> out;
    for (std::size_t v = 0; v < cm.num_vars(); ++v) {
        if (cm.kind(v) == VarKind::yI)
            out.push_back("-1 < Re " + cm.label(v) + " < 0");
        else
            out.push_back("Re " + cm.label(v) + " < 0");
    }
    std::string balance;
    for (std::size_t v = 0; v < cm.num_vars(); ++v) balance += (v ? " + Re " : "Re ") + cm.label(v);
    out.push_back(balance + " = -D/2");
    for (std::size_t l = 0; l < cm.num_lines; ++l) {
        std::string phi;
        for (std::size_t v = 0; v < cm.num_vars(); ++v) {
            const int u = cm.phi_coefficient(l, v);
            if (!u) continue;
            phi += (u == 1 ? "Re " : std::to_string(u) + " Re ") + cm.label(v) + " + ";
        }
        out.push_back("Re phi_" + std::to_string(l + 1) + " = " + phi + "1 > 0");
    }
    return out;
}

inline Json cm_to_json(const CMRep& cm) {
    Json j;
    j["kind"] = "cm";
    j["mode"] = to_string(cm.mode);
    j["num_lines"] = cm.num_lines;
    j["prefactor"] = to_string(cm.prefactor);
    j["masses"] = Json::array();
    for (const auto& m : cm.masses) j["masses"].push_back(to_string(m));
    j["variables"] = Json::array();
    for (std::size_t v = 0; v < cm.num_vars(); ++v) {
        const auto& row = cm.row(v);
        Json e;
        e["label"] = cm.label(v);
        e["role"] = to_string(cm.kind(v));
        e["coefficient"] = to_string(row.coefficient);
        e["symbol"] = row.symbol;
        e["exponents"] = row.exponents;
        e["origins"] = row.origins;
        j["variables"].push_back(e);
    }
    j["constraints"] = domain_constraint_text(cm);
    return j;
}

inline CMRep cm_from_json(const JsonDocument& doc) {
    const Json& r = doc.root();
    if (document_kind(doc) != "cm") doc.fail("kind", "expected \"cm\"");
    CMRep cm;
    const std::string mode = doc.string(doc.at(r, "", "mode"), "mode");
    if (mode == "commutative")
        cm.mode = CmMode::commutative;
    else if (mode == "noncommutative")
        cm.mode = CmMode::noncommutative;
    else
        doc.fail("mode", "expected \"commutative\" or \"noncommutative\"");
    long L = doc.integer(doc.at(r, "", "num_lines"), "num_lines");
    if (L < 1) doc.fail("num_lines", "must be >= 1");
    cm.num_lines = static_cast<std::size_t>(L);
    if (r.contains("prefactor")) cm.prefactor = doc.rational(r["prefactor"], "prefactor");
    if (r.contains("masses")) {
        std::size_t i = 0;
        for (const auto& m : doc.array(r["masses"], "masses"))
            cm.masses.push_back(doc.rational(m, "masses[" + std::to_string(i++) + "]"));
    }
    std::size_t i = 0;
    int last_role = 0;
    for (const auto& v : doc.array(doc.at(r, "", "variables"), "variables")) {
        const std::string p = "variables[" + std::to_string(i++) + "]";
        MellinRow row;
        row.coefficient = doc.rational(doc.at(v, p, "coefficient"), p + ".coefficient");
        if (v.contains("symbol")) row.symbol = doc.string(v["symbol"], p + ".symbol");
        std::size_t k = 0;
        for (const auto& e : doc.array(doc.at(v, p, "exponents"), p + ".exponents"))
            row.exponents.push_back(static_cast<int>(doc.integer(e, p + ".exponents[" + std::to_string(k++) + "]")));
        if (v.contains("origins")) {
            for (const auto& o : doc.array(v["origins"], p + ".origins")) {
                std::vector<int> origin;
                for (const auto& x : doc.array(o, p + ".origins")) origin.push_back(static_cast<int>(doc.integer(x, p + ".origins")));
                row.origins.push_back(std::move(origin));
            }
        }
        const std::string role = doc.string(doc.at(v, p, "role"), p + ".role");
        int rank = role == "x" ? 1 : role == "yR" ? 2 : role == "yI" ? 3 : 0;
        if (!rank) doc.fail(p + ".role", "expected x, yR or yI");
        if (rank < last_role) doc.fail(p + ".role", "variables must be ordered x, yR, yI");
        last_role = rank;
        (rank == 1 ? cm.u_rows : rank == 2 ? cm.vR_rows : cm.vI_rows).push_back(std::move(row));
    }
    try {
        cm.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(doc.source() + ": " + e.what());
    }
    return cm;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Reads `name_or_path` from disk, or else from the bundled corpus by name.
inline JsonDocument load_document(const std::string& name_or_path) {
    if (std::ifstream(name_or_path)) return JsonDocument::from_file(name_or_path);
    const auto& table = fixtures::all();
    const std::string name = name_or_path == "gw_example" ? "gw_two_line" : name_or_path;
    auto it = table.find(name);
    if (it == table.end()) {
        std::string known;
        for (const auto& [k, v] : table) known += (known.empty() ? "" : ", ") + k;
        throw ValidationError("no file or bundled input named '" + name_or_path + "' (bundled: " + known + ")");
    }
    return JsonDocument(std::string(it->second), "bundled:" + name);
}

}  // namespace cmrep
