#ifndef SIZERAMSEY_JSON_IO_HPP
#define SIZERAMSEY_JSON_IO_HPP

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sizeramsey/class_p.hpp"
#include "sizeramsey/colouring.hpp"
#include "sizeramsey/embedder.hpp"
#include "sizeramsey/embedding.hpp"
#include "sizeramsey/errors.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/paths.hpp"
#include "sizeramsey/rational.hpp"

// JSON views of the library's results. Exact quantities are written as
// strings ("3/40"); fields whose name ends in "Display" are floating point
// and informational only.

namespace sizeramsey {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Reading configuration

// A malformed field; the message starts with its JSON pointer.
class ConfigError : public ParseError {
public:
    ConfigError(const std::string& pointer, const std::string& what) : ParseError(pointer + ": " + what), pointer_(pointer) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

namespace detail {

inline std::string shortest_decimal(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace detail

/// Walks a JSON object, remembering where it is so errors can name the field.
class ConfigReader {
public:
    ConfigReader(const Json& node, std::string pointer = "") : node_(node), pointer_(std::move(pointer)) {
        if (!node_.is_object()) throw ConfigError(pointer_.empty() ? "/" : pointer_, "expected an object");
    }

    bool has(const std::string& key) const { return node_.contains(key) && !node_.at(key).is_null(); }
    std::string where(const std::string& key) const { return pointer_ + "/" + key; }

    ConfigReader child(const std::string& key) const {
        if (!has(key)) throw ConfigError(where(key), "missing object");
        return ConfigReader(node_.at(key), where(key));
    }
    std::optional<ConfigReader> optional_child(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return ConfigReader(node_.at(key), where(key));
    }

    std::uint64_t integer(const std::string& key) const {
        const Json& v = need(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw ConfigError(where(key), "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }
    std::uint64_t integer(const std::string& key, std::uint64_t fallback) const { return has(key) ? integer(key) : fallback; }
    std::uint64_t positive(const std::string& key) const {
        auto v = integer(key);
        if (v == 0) throw ConfigError(where(key), "must be positive");
        return v;
    }
    std::uint64_t positive(const std::string& key, std::uint64_t fallback) const { return has(key) ? positive(key) : fallback; }

    // Integers, decimal or fraction strings, and JSON numbers (read by their shortest decimal form).
    Rational rational(const std::string& key) const {
        const Json& v = need(key);
        try {
            if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
            if (v.is_number_unsigned()) return Rational(BigInt(v.get<std::uint64_t>()));
            if (v.is_number_float()) return parse_rational(detail::shortest_decimal(v.get<double>()));
            if (v.is_string()) return parse_rational(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ConfigError(where(key), e.what());
        }
        throw ConfigError(where(key), "expected a number or a fraction string");
    }
    Rational rational(const std::string& key, const Rational& fallback) const { return has(key) ? rational(key) : fallback; }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const Json& v = node_.at(key);
        if (!v.is_boolean()) throw ConfigError(where(key), "expected true or false");
        return v.get<bool>();
    }
    std::string string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const Json& v = node_.at(key);
        if (!v.is_string()) throw ConfigError(where(key), "expected a string");
        return v.get<std::string>();
    }
    std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed) const {
        std::string v = string(key, fallback);
        for (const auto& a : allowed)
            if (a == v) return v;
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw ConfigError(where(key), "unknown value '" + v + "' (expected one of: " + list + ")");
    }

    const Json& raw() const { return node_; }
    const std::string& pointer() const { return pointer_; }

private:
    const Json& need(const std::string& key) const {
        if (!has(key)) throw ConfigError(where(key), "missing field");
        return node_.at(key);
    }

    const Json& node_;
    std::string pointer_;
};

inline GoodQuadruple read_quadruple(const ConfigReader& r) {
    GoodQuadruple q{r.rational("a"), r.rational("b"), r.rational("c"), r.rational("eps")};
    if (q.a <= 0) throw ConfigError(r.where("a"), "must be positive");
    if (q.b <= 0) throw ConfigError(r.where("b"), "must be positive");
    if (q.c <= 0) throw ConfigError(r.where("c"), "must be positive");
    if (q.eps <= 0 || q.eps >= 1) throw ConfigError(r.where("eps"), "must lie in (0, 1)");
    return q;
}

inline ClassPParams read_class_params(const ConfigReader& r) {
    ClassPParams p{read_quadruple(r), r.positive("t", 1), r.positive("n")};
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(r.pointer().empty() ? "/" : r.pointer(), e.what());
    }
    return p;
}

inline GenerationConfig read_generation_config(const ConfigReader& r) {
    GenerationConfig g;
    g.mode = r.choice("mode", "toy", {"toy", "paper"}) == "paper" ? GenerationConfig::Mode::Paper : GenerationConfig::Mode::Toy;
    g.p = r.rational("p", g.p);
    if (g.p <= 0 || g.p > 1) throw ConfigError(r.where("p"), "must lie in (0, 1]");
    g.seed = r.integer("seed", g.seed);
    g.sample_count = r.positive("sample_count", g.sample_count);
    g.max_resamples = r.integer("max_resamples", g.max_resamples);
    g.certify = r.boolean("certify", g.certify);
    if (r.has("sample_tolerance")) {
        g.sample_tolerance = r.rational("sample_tolerance");
        if (*g.sample_tolerance <= 0) throw ConfigError(r.where("sample_tolerance"), "must be positive");
    }
    return g;
}

// ---------------------------------------------------------------------------
// Writing results

inline Json to_json(const Rational& q) { return to_string(q); }
inline Json to_json(const BigInt& v) { return v.str(); }

inline Json to_json(const Graph& g) {
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    return Json{{"vertices", g.vertex_count()}, {"edges", std::move(edges)}};
}

inline Graph graph_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) throw ParseError("graph JSON needs 'vertices' and 'edges'");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("graph JSON: each edge is a pair");
        edges.push_back(make_edge(e[0].get<Vertex>(), e[1].get<Vertex>()));
    }
    try {
        return Graph(j.at("vertices").get<std::size_t>(), edges);
    } catch (const DomainError& err) {
        throw ParseError(std::string("graph JSON: ") + err.what());
    }
}

inline Json to_json(const std::vector<Vertex>& vs) { return Json(vs); }

inline Json to_json(const PairWitness& w) { return Json{{"x", w.x}, {"y", w.y}, {"edges", w.edges}}; }

inline Json to_json(const Embedding& e) {
    Json map = Json::object();
    for (std::size_t v = 0; v < e.map.size(); ++v) map[std::to_string(v)] = e.map[v];
    Json out{{"patternVertices", e.pattern.vertex_count()},
             {"patternEdges", e.pattern.edge_count()},
             {"hostVertices", e.host.vertex_count()},
             {"map", std::move(map)}};
    if (e.constraint) out["allowedColours"] = e.constraint->allowed;
    auto check = validate_embedding(e);
    out["valid"] = check.ok;
    if (!check.ok) out["invalidReason"] = check.reason;
    return out;
}

inline Json to_json(const DensityCertificate& c) {
    return Json{{"passed", c.passed},
                {"exhaustive", c.exhaustive},
                {"pairsChecked", c.pairs_checked},
                {"sampleCount", c.sample_count},
                {"seed", c.seed},
                {"fG", to_json(c.f_g)},
                {"maxRelativeDeviation", to_json(c.max_rel_dev)},
                {"meanDensity", to_json(c.mean_density)},
                {"feasibleLow", to_json(c.feasible_lo)},
                {"feasibleHigh", to_json(c.feasible_hi)},
                {"sparsest", to_json(c.sparsest)},
                {"densest", to_json(c.densest)},
                {"worst", to_json(c.worst)}};
}

inline Json to_json(const ClassPReport& r) {
    Json out{{"passed", r.passed()},
             {"vertexCount", {{"ok", r.vertex_count_ok}, {"actual", r.vertices}, {"expected", r.expected_vertices}}},
             {"maxDegree", {{"ok", r.degree_ok}, {"actual", r.max_degree}}},
             {"density", to_json(r.density)},
             {"girth", {{"ok", r.girth_ok()}}}};
    if (r.short_cycle) out["girth"]["shortCycle"] = *r.short_cycle;
    return out;
}

inline Json to_json(const GenerationLog& log) {
    Json attempts = Json::array();
    for (const auto& a : log.attempts)
        attempts.push_back({{"seed", a.seed},
                            {"sampledEdges", a.sampled_edges},
                            {"sampleCertified", a.sample_certified},
                            {"sampleWorstRelativeDeviation", to_json(a.sample_worst_rel_dev)},
                            {"cyclesFound", a.cycles_found},
                            {"edgesRemoved", a.edges_removed},
                            {"maxDegreeAfterPrune", a.max_degree_after_prune},
                            {"outputCertified", a.output_certified},
                            {"outcome", a.outcome}});
    return Json{{"p", to_json(log.p)},
                {"resamples", log.resamples},
                {"cyclesFound", log.cycles_found},
                {"removedEdges", log.removed_edges.size()},
                {"removedVertices", log.removed_vertices},
                {"attempts", std::move(attempts)}};
}

inline Json to_json(const GoodQuadruple& q) {
    return Json{{"a", to_json(q.a)}, {"b", to_json(q.b)}, {"c", to_json(q.c)}, {"eps", to_json(q.eps)}};
}

inline Json to_json(const GoodnessReport& g) {
    return Json{{"good", g.good}, {"bLowerBound", to_json(g.b_lower_bound)}, {"failures", g.failures}};
}

inline Json to_json(const PathWitness& p) {
    Json out{{"length", p.vertices.size()}, {"vertices", p.vertices}};
    if (p.class_trace) out["classTrace"] = *p.class_trace;
    return out;
}

inline Json to_json(const PartitionResult& r) {
    Json paths = Json::array();
    for (const auto& p : r.blue_paths) paths.push_back(to_json(p));
    return Json{{"bluePaths", std::move(paths)}, {"redClasses", r.red_classes}};
}

inline Json to_json(const PartitionCheck& c) {
    Json out{{"ok", c.ok}};
    if (!c.ok) out["reason"] = c.reason;
    return out;
}

inline Json to_json(const std::vector<Segment>& segments) {
    Json out = Json::array();
    for (const auto& s : segments) out.push_back(Json{{"index", s.index}, {"vertices", s.vertices}});
    return out;
}

inline Json to_json(const Biclique& b) { return Json{{"left", b.left}, {"right", b.right}}; }

inline Json to_json(const KstReport& r) {
    Json out{{"x", r.x},
             {"k", r.k},
             {"edges", r.edges},
             {"containsBiclique", r.contains_biclique},
             {"withinBound", r.within_bound},
             {"boundDisplay", r.bound},
             {"marginDisplay", r.margin}};
    if (r.witness) out["witness"] = to_json(*r.witness);
    return out;
}

inline Json to_json(const KstSweep& s) {
    return Json{{"x", s.x},
                {"k", s.k},
                {"examined", s.examined},
                {"freeGraphs", s.free_graphs},
                {"violations", s.violations},
                {"maxFreeEdges", s.max_free_edges}};
}

inline Json to_json(const AuxColouring& aux) {
    std::size_t blue = 0;
    Json edges = Json::array();
    for (std::size_t i = 0; i < aux.label.size(); ++i) {
        const Edge& e = aux.base.edges()[i];
        Json item{{"edge", {e.u, e.v}}, {"label", aux.label[i] == AuxLabel::Blue ? "blue" : "grey"}};
        if (aux.witness[i]) item["witness"] = to_json(*aux.witness[i]);
        blue += aux.label[i] == AuxLabel::Blue;
        edges.push_back(std::move(item));
    }
    return Json{{"k", aux.k},
                {"blueColour", aux.blue},
                {"vertices", aux.base.vertex_count()},
                {"origin", aux.origin},
                {"blueEdges", blue},
                {"greyEdges", aux.label.size() - blue},
                {"edges", std::move(edges)}};
}

inline Json to_json(const ArrowVerdict& v) {
    Json out{{"arrows", v.arrows()}, {"result", to_string(v.result)}, {"exhaustive", v.exhaustive}};
    if (v.counterexample) {
        out["counterexample"] = serialize_colouring(*v.counterexample);
        if (v.counterexample_index) out["counterexampleIndex"] = *v.counterexample_index;
    } else {
        out["searched"] = v.searched;
    }
    return out;
}

inline Json to_json(const ConstantsChain& ch) {
    Json out{{"k", ch.k},
             {"s", ch.s},
             {"r", ch.r},
             {"t", ch.t},
             {"quad", to_json(ch.quad)},
             {"inputGood", ch.input_good},
             {"d0", to_json(ch.d0)},
             {"Tprime", to_json(ch.t_prime)},
             {"A", to_json(ch.A)},
             {"C", to_json(ch.C)},
             {"R", ch.R},
             {"delta", to_json(ch.delta)},
             {"B", to_json(ch.B)},
             {"gamma", to_json(ch.gamma)},
             {"logSofT", to_json(ch.log_s_T)}};
    if (ch.T)
        out["T"] = to_json(*ch.T);
    else
        out["T"] = Json{{"base", ch.s}, {"exponent", to_json(ch.log_s_T)}};
    out["TDecimalDigits"] = to_json(ch.T_decimal_digits);
    out["TDigitsExact"] = ch.T_digits_exact;
    out["derivedQuad"] = to_json(ch.derived());
    out["derivedGoodness"] = to_json(ch.derived_goodness);
    return out;
}

inline Json to_json(const TemplateReport& r) {
    Json out{{"ok", r.ok}, {"R", r.R}, {"argumentBoundHolds", r.argument_bound_holds}};
    if (!r.ok) {
        out["failure"] = r.failure;
        if (r.offending) out["offendingPair"] = {r.offending->first, r.offending->second};
    }
    Json dists = Json::array();
    for (const auto& d : r.distances)
        dists.push_back({{"i", d.i},
                         {"j", d.j},
                         {"hDistance", d.h_distance},
                         {"maxBaseDistance", d.max_base_distance},
                         {"argumentBound", d.argument_bound},
                         {"withinR", d.within_R}});
    out["segmentPairs"] = std::move(dists);
    if (r.ok) {
        out["templateVertices"] = r.template_graph.vertex_count();
        out["templateEdges"] = r.template_graph.edge_count();
        out["origin"] = r.origin;
    }
    return out;
}

inline Json to_json(const LLLStats& s) {
    return Json{{"seed", s.seed},
                {"resamples", s.resamples},
                {"maxResamples", s.max_resamples},
                {"conditionValue", to_json(s.condition_value)},
                {"conditionCertified", s.condition_certified},
                {"violationsPerEvent", s.violations}};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sizeramsey

#endif  // SIZERAMSEY_JSON_IO_HPP
