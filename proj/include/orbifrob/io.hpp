#pragma once

// JSON serialization for algebras, G-twisted algebras, cocycles and reports.
// Rationals are written as "p/q" (or "p"); entries are emitted in sorted order
// so identical inputs give byte-identical files. Readers validate shapes and
// indices and report the offending field with its line in the source text.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "orbifrob/cocycles.hpp"
#include "orbifrob/errors.hpp"
#include "orbifrob/frobenius.hpp"
#include "orbifrob/gfrob.hpp"
#include "orbifrob/group.hpp"
#include "orbifrob/report.hpp"

namespace orbifrob {

using Json = nlohmann::ordered_json;

namespace detail {

using PathToken = std::variant<std::string, std::size_t>;
using JsonPath = std::vector<PathToken>;

inline std::string path_str(const JsonPath& p) {
    std::string s;
    for (const auto& t : p) {
        if (std::holds_alternative<std::string>(t)) s += "/" + std::get<std::string>(t);
        else s += "/" + std::to_string(std::get<std::size_t>(t));
    }
    return s.empty() ? "/" : s;
}

/// Finds the 1-based line where the value at `target` starts. Walks the raw
/// text with a structural scanner; returns 0 if the path is absent.
class LineLocator {
public:
    LineLocator(const std::string& text, JsonPath target) : text_(text), target_(std::move(target)) {}

    std::size_t find() {
        try {
            value();
        } catch (const Stop&) {
        }
        return found_;
    }

private:
    struct Stop {};

    void ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }
    std::string string_token() {
        std::string out;
        ++pos_;  // opening quote
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') ++pos_;
            if (pos_ < text_.size()) out += text_[pos_++];
        }
        ++pos_;
        return out;
    }
    void value() {
        ws();
        if (path_ == target_) {
            found_ = line_;
            throw Stop{};
        }
        if (pos_ >= text_.size()) throw Stop{};
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            ws();
            if (pos_ < text_.size() && text_[pos_] == '}') {
                ++pos_;
                return;
            }
            while (pos_ < text_.size()) {
                ws();
                const std::string key = string_token();
                ws();
                ++pos_;  // colon
                path_.emplace_back(key);
                value();
                path_.pop_back();
                ws();
                if (pos_ < text_.size() && text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                ++pos_;
                return;
            }
        } else if (c == '[') {
            ++pos_;
            ws();
            if (pos_ < text_.size() && text_[pos_] == ']') {
                ++pos_;
                return;
            }
            for (std::size_t i = 0; pos_ < text_.size(); ++i) {
                path_.emplace_back(i);
                value();
                path_.pop_back();
                ws();
                if (pos_ < text_.size() && text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                ++pos_;
                return;
            }
        } else if (c == '"') {
            string_token();
        } else {
            while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '}' &&
                   !std::isspace(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
    }

    const std::string& text_;
    JsonPath target_;
    JsonPath path_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t found_ = 0;
};

/// Read-side cursor: a JSON node plus its path, raising ParseError with the
/// source line on any mismatch.
class Node {
public:
    Node(const Json& j, const std::string& text, JsonPath path = {}) : j_(&j), text_(&text), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, LineLocator(*text_, path_).find(), path_str(path_));
    }

    const Json& json() const { return *j_; }
    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }
    Node operator[](const std::string& key) const {
        if (!j_->is_object()) fail("expected an object");
        if (!j_->contains(key)) fail("missing field \"" + key + "\"");
        JsonPath p = path_;
        p.emplace_back(key);
        return Node(j_->at(key), *text_, std::move(p));
    }
    Node operator[](std::size_t i) const {
        if (!j_->is_array() || i >= j_->size()) fail("index " + std::to_string(i) + " out of range");
        JsonPath p = path_;
        p.emplace_back(i);
        return Node((*j_)[i], *text_, std::move(p));
    }
    std::size_t size() const {
        if (!j_->is_array()) fail("expected an array");
        return j_->size();
    }
    std::string str() const {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }
    std::size_t index(std::size_t bound) const {
        if (!j_->is_number_integer() || j_->get<long long>() < 0) fail("expected a nonnegative integer index");
        const auto v = static_cast<std::size_t>(j_->get<long long>());
        if (v >= bound) fail("index " + std::to_string(v) + " out of range (bound " + std::to_string(bound) + ")");
        return v;
    }
    long long integer() const {
        if (!j_->is_number_integer()) fail("expected an integer");
        return j_->get<long long>();
    }
    Scalar scalar() const {
        if (j_->is_number_integer()) return Scalar(static_cast<long>(j_->get<long long>()));
        if (!j_->is_string()) fail("expected a rational string \"p/q\"");
        try {
            return Scalar::parse(j_->get<std::string>());
        } catch (const Error& e) {
            fail(std::string("bad rational: ") + e.what());
        }
    }
    const JsonPath& path() const { return path_; }

private:
    const Json* j_;
    const std::string* text_;
    JsonPath path_;
};

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n' ? 1 : 0;
        throw ParseError(std::string("malformed JSON: ") + e.what(), line);
    }
}

inline std::string num(const Scalar& s) { return s.str(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Frobenius algebras

inline Json to_json(const FrobeniusAlgebra& a) {
    Json j;
    j["name"] = a.name();
    j["dim"] = a.dim();
    j["labels"] = a.labels();
    if (a.graded()) {
        Json d = Json::array();
        for (const auto& x : a.degrees()) d.push_back(detail::num(x));
        j["degrees"] = d;
    }
    Json u = Json::array();
    for (const auto& x : a.unit()) u.push_back(detail::num(x));
    j["unit"] = u;
    Json m = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k)
            for (const auto& [l, c] : a.product(i, k).entries()) m.push_back(Json::array({i, k, l, detail::num(c)}));
    j["mult"] = m;
    Json g = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (!a.gram()(i, k).is_zero()) g.push_back(Json::array({i, k, detail::num(a.gram()(i, k))}));
    j["metric"] = g;
    j["parity"] = a.parities();
    return j;
}

/// Reads the algebra format {name, dim, labels, degrees, unit, mult, metric, parity}.
inline FrobeniusAlgebra algebra_from_json(const std::string& text) {
    const Json j = detail::parse_text(text);
    const detail::Node root(j, text);
    FrobeniusSpec spec;
    spec.name = root.has("name") ? root["name"].str() : std::string("algebra");
    const auto dim_node = root["dim"];
    const long long dim_raw = dim_node.integer();
    if (dim_raw <= 0) dim_node.fail("dim must be positive");
    const auto n = static_cast<std::size_t>(dim_raw);

    if (root.has("labels")) {
        const auto labels = root["labels"];
        if (labels.size() != n) labels.fail("expected " + std::to_string(n) + " labels");
        for (std::size_t i = 0; i < n; ++i) spec.labels.push_back(labels[i].str());
    }
    if (root.has("degrees")) {
        const auto degrees = root["degrees"];
        if (degrees.size() != n) degrees.fail("expected " + std::to_string(n) + " degrees");
        for (std::size_t i = 0; i < n; ++i) spec.degrees.push_back(degrees[i].scalar());
    }
    const auto unit = root["unit"];
    if (unit.size() != n) unit.fail("expected " + std::to_string(n) + " unit coordinates");
    for (std::size_t i = 0; i < n; ++i) spec.unit.push_back(unit[i].scalar());

    spec.mult = SparseTensor({n, n, n});
    const auto mult = root["mult"];
    for (std::size_t t = 0; t < mult.size(); ++t) {
        const auto e = mult[t];
        if (e.size() != 4) e.fail("mult entries are [i, j, k, \"p/q\"]");
        const std::size_t i = e[0].index(n), k = e[1].index(n), l = e[2].index(n);
        const Scalar c = e[3].scalar();
        if (!spec.mult.get({i, k, l}).is_zero()) e.fail("duplicate mult entry");
        if (c.is_zero()) e.fail("zero coefficients are not stored");
        spec.mult.set({i, k, l}, c);
    }
    spec.metric = Matrix(n, n);
    const auto metric = root["metric"];
    for (std::size_t t = 0; t < metric.size(); ++t) {
        const auto e = metric[t];
        if (e.size() != 3) e.fail("metric entries are [i, j, \"p/q\"]");
        const std::size_t i = e[0].index(n), k = e[1].index(n);
        if (!spec.metric(i, k).is_zero()) e.fail("duplicate metric entry");
        spec.metric(i, k) = e[2].scalar();
    }
    if (root.has("parity")) {
        const auto parity = root["parity"];
        if (parity.size() != n) parity.fail("expected " + std::to_string(n) + " parities");
        for (std::size_t i = 0; i < n; ++i) {
            const long long p = parity[i].integer();
            if (p != 0 && p != 1) parity[i].fail("parity must be 0 or 1");
            spec.parity.push_back(static_cast<int>(p));
        }
    }
    try {
        return FrobeniusAlgebra(std::move(spec));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

// ---------------------------------------------------------------------------
// Groups

inline Json group_to_json(const FiniteGroupTable& g) {
    Json j;
    j["name"] = g.name();
    j["elements"] = g.labels();
    if (!g.is_symmetric()) {
        Json t = Json::array();
        for (std::size_t a = 0; a < g.size(); ++a) {
            Json row = Json::array();
            for (std::size_t b = 0; b < g.size(); ++b) row.push_back(g.mul(a, b));
            t.push_back(row);
        }
        j["table"] = t;
    }
    return j;
}

namespace detail {

/// "S<n>" or "Z<m>" by name, otherwise an explicit {"name","elements","table"}.
inline GroupPtr read_group(const Node& node) {
    if (node.json().is_string()) {
        const std::string name = node.str();
        if (name.size() >= 2 && (name[0] == 'S' || name[0] == 'Z')) {
            std::size_t k = 0;
            try {
                k = std::stoul(name.substr(1));
            } catch (const std::exception&) {
                node.fail("unknown group \"" + name + "\"");
            }
            if (name[0] == 'S') {
                if (k > 7) node.fail("symmetric groups beyond S7 are not supported");
                return FiniteGroupTable::symmetric(k);
            }
            if (k == 0) node.fail("Z0 is not a group");
            return FiniteGroupTable::cyclic(k);
        }
        node.fail("unknown group \"" + name + "\"");
    }
    const auto name = node["name"].str();
    const auto elems = node["elements"];
    const std::size_t n = elems.size();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(elems[i].str());
    const auto table = node["table"];
    if (table.size() != n) table.fail("table must be square");
    std::vector<std::vector<std::size_t>> t(n);
    for (std::size_t a = 0; a < n; ++a) {
        const auto row = table[a];
        if (row.size() != n) row.fail("table must be square");
        for (std::size_t b = 0; b < n; ++b) t[a].push_back(row[b].index(n));
    }
    try {
        return FiniteGroupTable::from_table(name, std::move(labels), std::move(t));
    } catch (const Error& e) {
        table.fail(e.what());
    }
}

inline std::size_t read_element(const Node& node, const FiniteGroupTable& g) {
    if (node.json().is_number_integer()) return node.index(g.size());
    const std::string text = node.str();
    for (std::size_t a = 0; a < g.size(); ++a) {
        if (g.label(a) == text) return a;
    }
    try {
        if (auto found = g.find(text)) return *found;
    } catch (const Error&) {
    }
    node.fail("unknown group element \"" + text + "\"");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cocycles

inline Json to_json(const TwoCocycle& alpha) {
    const auto& g = *alpha.group();
    Json j;
    j["group"] = g.is_symmetric() ? Json(g.name()) : group_to_json(g);
    Json v = Json::array();
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = 0; b < g.size(); ++b) v.push_back(Json::array({g.label(a), g.label(b), detail::num(alpha(a, b))}));
    j["values"] = v;
    return j;
}

/// {"group": "S4", "values": [[g, h, "p/q"], ...]}; omitted pairs default to 1.
inline TwoCocycle cocycle_from_json(const std::string& text) {
    const Json j = detail::parse_text(text);
    const detail::Node root(j, text);
    const GroupPtr g = detail::read_group(root["group"]);
    const std::size_t n = g->size();
    PairTable values(n * n, Scalar(1));
    std::vector<bool> seen(n * n, false);
    const auto vals = root["values"];
    for (std::size_t t = 0; t < vals.size(); ++t) {
        const auto e = vals[t];
        if (e.size() != 3) e.fail("values entries are [g, h, \"p/q\"]");
        const std::size_t a = detail::read_element(e[0], *g);
        const std::size_t b = detail::read_element(e[1], *g);
        if (seen[a * n + b]) e.fail("duplicate pair");
        seen[a * n + b] = true;
        const Scalar c = e[2].scalar();
        if (c.is_zero()) e[2].fail("cocycle values must be nonzero");
        values[a * n + b] = c;
    }
    try {
        return TwoCocycle(g, std::move(values));
    } catch (const Error& e) {
        throw ParseError(e.what(), 0, "/values");
    }
}

// ---------------------------------------------------------------------------
// G-twisted Frobenius algebras

inline Json to_json(const GFrobeniusAlgebra& a) {
    const auto& G = *a.group;
    const std::size_t n = G.size();
    Json j;
    j["name"] = a.name;
    j["group"] = G.is_symmetric() ? Json(G.name()) : group_to_json(G);
    if (a.top_degree) j["top_degree"] = detail::num(*a.top_degree);
    Json sectors = Json::array();
    for (std::size_t g = 0; g < n; ++g) {
        const auto& s = a.sectors[g];
        Json sj;
        sj["element"] = G.label(g);
        sj["labels"] = s.labels;
        Json deg = Json::array();
        for (const auto& d : s.degrees) deg.push_back(detail::num(d));
        sj["degrees"] = deg;
        sj["parity"] = s.parity;
        sj["shift"] = detail::num(s.shift);
        sj["character"] = detail::num(a.character[g]);
        Json met = Json::array();
        const auto& m = a.metric[g];
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k)
                if (!m(i, k).is_zero()) met.push_back(Json::array({i, k, detail::num(m(i, k))}));
        sj["metric"] = met;
        sectors.push_back(sj);
    }
    j["sectors"] = sectors;
    Json unit = Json::array();
    for (const auto& [i, c] : a.unit.entries()) unit.push_back(Json::array({i, detail::num(c)}));
    j["unit"] = unit;
    Json mult = Json::array();
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            Json entries = Json::array();
            for (std::size_t i = 0; i < a.dim(g); ++i)
                for (std::size_t k = 0; k < a.dim(h); ++k)
                    for (const auto& [l, c] : a.product(g, h, i, k).entries()) entries.push_back(Json::array({i, k, l, detail::num(c)}));
            if (!entries.empty()) mult.push_back(Json{{"g", G.label(g)}, {"h", G.label(h)}, {"entries", entries}});
        }
    j["mult"] = mult;
    Json action = Json::array();
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            Json entries = Json::array();
            const auto& blk = a.action_block(g, h);
            for (std::size_t col = 0; col < blk.cols(); ++col)
                for (const auto& [row, c] : blk.columns[col].entries()) entries.push_back(Json::array({row, col, detail::num(c)}));
            action.push_back(Json{{"g", G.label(g)}, {"h", G.label(h)}, {"entries", entries}});
        }
    j["action"] = action;
    return j;
}

inline GFrobeniusAlgebra gfrob_from_json(const std::string& text) {
    const Json j = detail::parse_text(text);
    const detail::Node root(j, text);
    GFrobeniusAlgebra a;
    a.group = detail::read_group(root["group"]);
    const auto& G = *a.group;
    const std::size_t n = G.size();
    a.name = root.has("name") ? root["name"].str() : std::string("G-algebra");
    if (root.has("top_degree")) a.top_degree = root["top_degree"].scalar();

    const auto sectors = root["sectors"];
    if (sectors.size() != n) sectors.fail("expected one sector per group element (" + std::to_string(n) + ")");
    a.sectors.resize(n);
    a.character.assign(n, Scalar(1));
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> order_in_file(n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto sj = sectors[t];
        const std::size_t g = detail::read_element(sj["element"], G);
        if (seen[g]) sj["element"].fail("duplicate sector");
        seen[g] = true;
        order_in_file[t] = g;
        Sector s;
        const auto labels = sj["labels"];
        for (std::size_t i = 0; i < labels.size(); ++i) s.labels.push_back(labels[i].str());
        const std::size_t d = s.labels.size();
        if (sj.has("degrees")) {
            const auto deg = sj["degrees"];
            if (deg.size() != d) deg.fail("expected " + std::to_string(d) + " degrees");
            for (std::size_t i = 0; i < d; ++i) s.degrees.push_back(deg[i].scalar());
        }
        if (sj.has("parity")) {
            const auto par = sj["parity"];
            if (par.size() != d) par.fail("expected " + std::to_string(d) + " parities");
            for (std::size_t i = 0; i < d; ++i) {
                const long long p = par[i].integer();
                if (p != 0 && p != 1) par[i].fail("parity must be 0 or 1");
                s.parity.push_back(static_cast<int>(p));
            }
        } else {
            s.parity.assign(d, 0);
        }
        if (sj.has("shift")) s.shift = sj["shift"].scalar();
        if (sj.has("character")) {
            a.character[g] = sj["character"].scalar();
            if (a.character[g].is_zero()) sj["character"].fail("character values must be nonzero");
        }
        a.sectors[g] = std::move(s);
    }
    a.metric.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const auto sj = sectors[t];
        const std::size_t g = order_in_file[t];
        Matrix m(a.dim(g), a.dim(G.inv(g)));
        if (sj.has("metric")) {
            const auto met = sj["metric"];
            for (std::size_t k = 0; k < met.size(); ++k) {
                const auto e = met[k];
                if (e.size() != 3) e.fail("metric entries are [i, j, \"p/q\"]");
                m(e[0].index(m.rows()), e[1].index(m.cols())) = e[2].scalar();
            }
        }
        a.metric[g] = std::move(m);
    }

    const std::size_t e = G.identity();
    std::vector<SparseVec::Entry> unit;
    const auto uj = root["unit"];
    for (std::size_t t = 0; t < uj.size(); ++t) {
        const auto ent = uj[t];
        if (ent.size() != 2) ent.fail("unit entries are [i, \"p/q\"]");
        unit.emplace_back(ent[0].index(a.dim(e)), ent[1].scalar());
    }
    a.unit = SparseVec::from_entries(std::move(unit));

    a.mult.assign(n * n, {});
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) a.mult[g * n + h].assign(a.dim(g) * a.dim(h), SparseVec());
    const auto mult = root["mult"];
    for (std::size_t t = 0; t < mult.size(); ++t) {
        const auto blk = mult[t];
        const std::size_t g = detail::read_element(blk["g"], G);
        const std::size_t h = detail::read_element(blk["h"], G);
        const std::size_t gh = G.mul(g, h);
        std::vector<std::vector<SparseVec::Entry>> raw(a.dim(g) * a.dim(h));
        const auto entries = blk["entries"];
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto ent = entries[k];
            if (ent.size() != 4) ent.fail("mult entries are [i, j, k, \"p/q\"]");
            const std::size_t i = ent[0].index(a.dim(g)), jj = ent[1].index(a.dim(h)), l = ent[2].index(a.dim(gh));
            raw[i * a.dim(h) + jj].emplace_back(l, ent[3].scalar());
        }
        for (std::size_t k = 0; k < raw.size(); ++k) a.mult[g * n + h][k] = SparseVec::from_entries(std::move(raw[k]));
    }
    a.action.assign(n * n, SparseMatrix{});
    std::vector<bool> have_action(n * n, false);
    const auto action = root["action"];
    for (std::size_t t = 0; t < action.size(); ++t) {
        const auto blk = action[t];
        const std::size_t g = detail::read_element(blk["g"], G);
        const std::size_t h = detail::read_element(blk["h"], G);
        const std::size_t c = G.conj(g, h);
        std::vector<std::vector<SparseVec::Entry>> cols(a.dim(h));
        const auto entries = blk["entries"];
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto ent = entries[k];
            if (ent.size() != 3) ent.fail("action entries are [row, col, \"p/q\"]");
            const std::size_t row = ent[0].index(a.dim(c)), col = ent[1].index(a.dim(h));
            cols[col].emplace_back(row, ent[2].scalar());
        }
        SparseMatrix m{a.dim(c), {}};
        for (auto& col : cols) m.columns.push_back(SparseVec::from_entries(std::move(col)));
        a.action[g * n + h] = std::move(m);
        have_action[g * n + h] = true;
    }
    for (std::size_t k = 0; k < n * n; ++k) {
        if (!have_action[k]) action.fail("missing action block for g=" + G.label(k / n) + ", h=" + G.label(k % n));
    }
    return a;
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const Report& r) {
    Json j;
    j["title"] = r.title();
    j["passed"] = r.passed();
    Json checks = Json::array();
    for (const auto& c : r.checks()) {
        Json cj{{"axiom", c.name}, {"status", to_string(c.status)}, {"instances", c.instances}, {"failures", c.failures}};
        if (!c.witness.empty()) cj["witness"] = c.witness;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    return j;
}

}  // namespace orbifrob
