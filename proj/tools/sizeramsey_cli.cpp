// Command-line front end. Every subcommand reads its parameters from an
// optional JSON config, overlays any flags given on the command line, and
// writes one JSON report to --out (stdout when absent).
//
// Exit codes: 0 success or "true", 1 honest negative, 2 error.

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "sizeramsey/sizeramsey.hpp"

namespace {

using namespace sizeramsey;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

// Reported as an honest negative: the computation ran and the answer is "no".
class HonestNegative : public std::runtime_error {
public:
    HonestNegative(const std::string& what, Json report) : std::runtime_error(what), report_(std::move(report)) {}
    const Json& report() const { return report_; }

private:
    Json report_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ParseError("write failed for '" + path + "'");
}

// Edge-list text, a graph JSON object, or a report carrying a "graph" member.
Graph load_graph(const std::string& path) {
    std::string text = read_file(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ParseError(path + ": " + e.what());
        }
        return graph_from_json(j.contains("graph") ? j.at("graph") : j);
    }
    try {
        return parse_edge_list(text);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// Flag text to JSON: "1|2,3" is a list of lists, "1,2" a list, integers and
// booleans keep their type, everything else stays a string.
Json flag_value(const std::string& text) {
    auto scalar = [](const std::string& s) -> Json {
        if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) && s.size() < 19)
            return Json(std::stoull(s));
        if (s == "true") return true;
        if (s == "false") return false;
        return s;
    };
    auto list = [&](const std::string& s) {
        Json out = Json::array();
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(scalar(item));
        return out;
    };
    if (text.find('|') != std::string::npos) {
        Json out = Json::array();
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, '|')) out.push_back(list(part));
        return out;
    }
    if (text.find(',') != std::string::npos) return list(text);
    return scalar(text);
}

struct Command {
    CLI::App* app = nullptr;
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> flags;   // JSON key, raw text, in command-line order
    std::map<std::string, std::string> files;                 // extra output files
    std::function<int(Command&)> run;

    // Adds a flag that overlays the config key of the same meaning.
    void param(const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(flag, [this, key](const std::string& v) { flags.emplace_back(key, v); }, help);
    }
    void output(const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(flag, [this, key](const std::string& v) { files[key] = v; }, help);
    }

    Json params() const {
        Json p = Json::object();
        if (!config.empty()) {
            try {
                p = Json::parse(read_file(config));
            } catch (const Json::parse_error& e) {
                throw ConfigError("/", std::string("config is not valid JSON: ") + e.what());
            }
            if (!p.is_object()) throw ConfigError("/", "config must be a JSON object");
        }
        for (const auto& [key, text] : flags) {
            if (key == "quad") {
                Json v = flag_value(text);
                if (!v.is_array() || v.size() != 4) throw ConfigError("/quad", "expected a,b,c,eps");
                const char* names[] = {"a", "b", "c", "eps"};
                for (std::size_t i = 0; i < 4; ++i) p[names[i]] = v[i];
            } else {
                p[key] = flag_value(text);
            }
        }
        if (seed) p["seed"] = *seed;
        return p;
    }

    void emit(const Json& report) const {
        if (out.empty())
            std::cout << dump(report);
        else
            write_file(out, dump(report));
    }
    void emit_file(const std::string& key, const std::string& text) const {
        if (auto it = files.find(key); it != files.end()) write_file(it->second, text);
    }
};

Json header(const std::string& command, const Json& params) {
    return Json{{"schemaVersion", kSchemaVersion}, {"command", command}, {"params", params}};
}

Graph graph_param(const ConfigReader& r, const std::string& key) {
    std::string path = r.string(key, "");
    if (path.empty()) throw ConfigError(r.where(key), "missing graph file");
    try {
        return load_graph(path);
    } catch (const ParseError& e) {
        throw ConfigError(r.where(key), e.what());
    }
}

std::vector<Vertex> vertex_list(const ConfigReader& r, const std::string& key) {
    const Json& v = r.raw().at(key);
    std::vector<Vertex> out;
    if (!v.is_array()) throw ConfigError(r.where(key), "expected a list of vertices");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_unsigned()) throw ConfigError(r.where(key) + "/" + std::to_string(i), "expected a vertex index");
        out.push_back(v[i].get<Vertex>());
    }
    return out;
}

std::vector<std::vector<Vertex>> vertex_lists(const ConfigReader& r, const std::string& key) {
    const Json& v = r.raw().at(key);
    if (!v.is_array()) throw ConfigError(r.where(key), "expected a list of vertex lists");
    std::vector<std::vector<Vertex>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = r.where(key) + "/" + std::to_string(i);
        if (!v[i].is_array()) throw ConfigError(at, "expected a list of vertices");
        std::vector<Vertex> part;
        for (std::size_t j = 0; j < v[i].size(); ++j) {
            if (!v[i][j].is_number_unsigned()) throw ConfigError(at + "/" + std::to_string(j), "expected a vertex index");
            part.push_back(v[i][j].get<Vertex>());
        }
        out.push_back(std::move(part));
    }
    return out;
}

void check_vertices(const ConfigReader& r, const std::string& key, const std::vector<Vertex>& vs, std::size_t n) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i] >= n) throw ConfigError(r.where(key) + "/" + std::to_string(i), "vertex out of range");
}

PipelineConfig pipeline_params(const Json& p) { return read_pipeline_config(p); }

// ---------------------------------------------------------------------------
// Subcommands

int cmd_gen(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    ClassPParams params = read_class_params(r);
    GenerationConfig gen = read_generation_config(r);
    Json report = header("gen", p);
    try {
        GenerationResult res = generate_class_p(params, gen);
        report["graph"] = to_json(res.graph);
        report["certificate"] = to_json(res.certificate);
        report["log"] = to_json(res.log);
        c.emit(report);
        c.emit_file("edges", to_edge_list(res.graph));
        return kOk;
    } catch (const CertificationFailure& e) {
        report["failure"] = Json{{"reason", e.what()}, {"worstPair", to_json(e.worst_pair())}, {"log", to_json(e.log())}};
        throw HonestNegative(e.what(), report);
    }
}

int cmd_verify_p(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    Graph g = graph_param(r, "graph");
    ClassPParams params = read_class_params(r);
    std::string mode = r.choice("verify_mode", "auto", {"auto", "exhaustive", "sampled"});
    std::size_t samples = r.positive("samples", 4000);
    std::uint64_t seed = r.integer("seed", 0);
    VerifyMode vm = mode == "exhaustive" ? VerifyMode::exhaustive()
                    : mode == "sampled"  ? VerifyMode::sampled(samples, seed)
                                         : VerifyMode::automatic(samples, seed);
    ClassPReport rep = verify_class_p(g, params, vm);
    Json report = header("verify-p", p);
    report["report"] = to_json(rep);
    c.emit(report);
    return rep.passed() ? kOk : kNegative;
}

int cmd_power(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    Graph g = graph_param(r, "graph");
    std::size_t k = r.positive("k");
    Graph gk = power(g, k);
    Json report = header("power", p);
    report["graph"] = to_json(gk);
    report["maxDegree"] = max_degree(gk);
    c.emit(report);
    c.emit_file("edges", to_edge_list(gk));
    return kOk;
}

int cmd_blowup(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    Graph h = graph_param(r, "graph");
    std::size_t t = r.positive("t");
    bool sheared = r.choice("kind", "sheared", {"sheared", "complete"}) == "sheared";
    std::string rule = r.choice("matching", "aligned", {"aligned", "seeded"});
    MatchingRule mr = rule == "seeded" ? MatchingRule::seeded(r.integer("seed", 0)) : MatchingRule::aligned();
    Blowup b = sheared ? sheared_blowup(h, t, mr) : complete_blowup(h, t);
    std::size_t formula = sheared ? sheared_blowup_edge_count(h.vertex_count(), h.edge_count(), t)
                                  : complete_blowup_edge_count(h.vertex_count(), h.edge_count(), t);
    Json report = header("blowup", p);
    report["vertices"] = b.host.vertex_count();
    report["edges"] = b.host.edge_count();
    report["formulaEdges"] = formula;
    auto bad = check_blowup(b.host, b.map);
    report["valid"] = !bad;
    if (bad) report["invalidReason"] = *bad;
    report["cliques"] = b.map.clique_of;
    report["graph"] = to_json(b.host);
    c.emit(report);
    c.emit_file("edges", to_edge_list(b.host));
    if (bad || formula != b.host.edge_count()) throw InternalError("blowup: construction disagrees with its own checks");
    return kOk;
}

int cmd_partition(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    Graph blue = graph_param(r, "graph");
    std::size_t ell = r.positive("ell", 1);
    PartitionMode mode = read_partition_mode(r, "mode", PartitionMode::Auto);
    std::size_t restarts = r.positive("restarts", 32);
    std::uint64_t seed = r.integer("seed", 0);
    Json report = header("partition", p);
    try {
        PartitionResult res = partition_two_coloured(blue, ell, mode, seed, restarts);
        PartitionCheck check = verify_partition(blue, res, ell);
        report["partition"] = to_json(res);
        report["check"] = to_json(check);
        c.emit(report);
        if (!check.ok) throw InternalError("partition: result fails verification: " + check.reason);
        return kOk;
    } catch (const SearchExhausted& e) {
        report["failure"] = e.what();
        throw HonestNegative(e.what(), report);
    }
}

int cmd_longpath(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    Graph g = graph_param(r, "graph");
    std::vector<std::vector<Vertex>> parts;
    if (r.has("parts")) {
        parts = vertex_lists(r, "parts");
        for (std::size_t i = 0; i < parts.size(); ++i) check_vertices(r, "parts/" + std::to_string(i), parts[i], g.vertex_count());
    } else {
        parts.emplace_back(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v) parts[0][v] = v;
    }
    std::size_t length = r.positive("length");
    LongPathOptions opt;
    if (r.has("gamma")) opt.gamma = r.rational("gamma");
    opt.precheck = r.boolean("precheck", opt.gamma.has_value());
    opt.min_part_size = r.integer("min_part_size", 0);
    opt.node_budget = r.positive("node_budget", opt.node_budget);
    opt.seed = r.integer("seed", 0);
    Json report = header("longpath", p);
    try {
        LongPathResult res = long_path_through_sets(g, parts, length, opt);
        auto bad = check_path(g, res.path);
        report["path"] = to_json(res.path);
        report["nodes"] = res.nodes;
        report["hypothesisChecked"] = res.hypothesis_checked;
        report["valid"] = !bad;
        c.emit(report);
        if (bad) throw InternalError("longpath: path fails verification: " + *bad);
        return kOk;
    } catch (const HypothesisFailure& e) {
        report["failure"] = Json{{"reason", e.what()}, {"x", e.x()}, {"y", e.y()}};
        throw HonestNegative(e.what(), report);
    } catch (const NoPathFound& e) {
        report["failure"] = Json{{"reason", e.what()}, {"best", to_json(e.best())}};
        throw HonestNegative(e.what(), report);
    }
}

int cmd_segments(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    Graph g = graph_param(r, "graph");
    if (!r.has("path")) throw ConfigError(r.where("path"), "missing field");
    PathWitness path{vertex_list(r, "path"), std::nullopt};
    check_vertices(r, "path", path.vertices, g.vertex_count());
    std::size_t t = r.positive("t");
    if (auto bad = check_path(g, path)) throw ConfigError(r.where("path"), "not a path of the graph: " + *bad);
    if (path.vertices.size() % t != 0) throw ConfigError(r.where("path"), "length is not a multiple of t");
    std::vector<Segment> segs = segment_path(path, t);
    Graph aux = auxiliary_graph(g, segs);
    Json report = header("segments", p);
    report["segments"] = to_json(segs);
    report["auxiliary"] = to_json(aux);
    c.emit(report);
    c.emit_file("edges", to_edge_list(aux));
    return kOk;
}

int cmd_aux_colour(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    PipelineConfig cfg = pipeline_params(p);
    Graph g = r.has("graph") ? graph_param(r, "graph") : build_step_host(cfg).g;
    Blowup host = sheared_blowup(power(g, cfg.host_power()), cfg.T);
    EdgeColouring chi = make_colouring(host, cfg.s, cfg.colouring, cfg.seeds.colouring, cfg.colouring_colour);
    Json report = header("aux-colour", p);
    std::vector<MonoClique> mono(g.vertex_count());
    std::vector<std::size_t> per_colour(cfg.s + 1, 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto m = mono_clique_in_clique(chi, host.map.clique_of[v], cfg.T_prime);
        if (!m) {
            report["failure"] = Json{{"reason", "no monochromatic subclique"}, {"vertex", v}};
            throw HonestNegative("clique " + std::to_string(v) + " has no monochromatic subclique on T' vertices", report);
        }
        ++per_colour[m->colour];
        mono[v] = std::move(*m);
    }
    Colour blue = 1;
    for (Colour col = 2; col <= cfg.s; ++col)
        if (per_colour[col] > per_colour[blue]) blue = col;
    std::vector<Vertex> W;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (mono[v].colour == blue) W.push_back(v);
    Graph J = power(induced_subgraph(g, W).graph, cfg.host_power());
    BlowupMap map = host.map;
    std::vector<std::vector<Vertex>> sub(g.vertex_count());
    for (Vertex v : W) sub[v] = mono[v].vertices;
    map.subclique = sub;
    AuxColouring aux = build_aux_colouring(J, W, map, chi, cfg.k, blue);
    if (auto bad = check_aux_witnesses(aux, map, chi)) throw InternalError("aux-colour: witness check failed: " + *bad);
    report["blue"] = blue;
    report["W"] = W;
    report["aux"] = to_json(aux);
    c.emit(report);
    return kOk;
}

int cmd_arrow(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    Graph host = graph_param(r, "host");
    Graph pattern = graph_param(r, "pattern");
    std::size_t s = r.positive("colours", 2);
    std::string kind = r.choice("mode", "exhaustive", {"exhaustive", "randomized"});
    ArrowMode mode = kind == "randomized" ? ArrowMode::randomized(r.positive("trials", 1000), r.integer("seed", 0))
                                          : ArrowMode::exhaustive(r.positive("budget", std::uint64_t{1} << 24));
    mode.threads = r.integer("threads", 0);
    Json report = header("arrow", p);
    try {
        ArrowVerdict v = arrow_check(host, pattern, s, mode);
        report["verdict"] = to_json(v);
        report["arrows"] = v.arrows();
        c.emit(report);
        return v.arrows() ? kOk : kNegative;
    } catch (const BudgetExceeded& e) {
        report["arrows"] = nullptr;
        report["failure"] = Json{{"reason", e.what()}, {"status", "budgetExceeded"}};
        throw HonestNegative(e.what(), report);
    }
}

int cmd_embed_base(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    std::size_t k = r.positive("k", 1);
    BaseCaseRun run;
    if (r.has("graph")) {
        Graph g = graph_param(r, "graph");
        PipelineConfig cfg;
        cfg.n = r.positive("n");
        cfg.budgets.partition_mode = read_partition_mode(r, "partition_mode", cfg.budgets.partition_mode);
        cfg.seeds = PipelineSeeds::from_master(r.integer("seed", 0));
        run = base_case_on_graph(g, k, cfg, r.boolean("search_fallback", true));
    } else {
        PipelineConfig cfg = pipeline_params(p);
        run = base_case_driver(k, cfg);
    }
    Json report = header("embed-base", p);
    report["result"] = to_json(run);
    if (!run.ok) throw HonestNegative(run.reason, report);
    c.emit(report);
    return kOk;
}

LLLInstance read_lll_instance(const ConfigReader& r) {
    auto graph_at = [&](const std::string& key) {
        if (!r.has(key)) throw ConfigError(r.where(key), "missing graph");
        try {
            return graph_from_json(r.raw().at(key));
        } catch (const std::exception& e) {
            throw ConfigError(r.where(key), e.what());
        }
    };
    Graph templ = graph_at("template");
    Graph host = graph_at("host");
    if (!r.has("cliques")) throw ConfigError(r.where("cliques"), "missing field");
    auto cliques = vertex_lists(r, "cliques");
    for (std::size_t i = 0; i < cliques.size(); ++i) check_vertices(r, "cliques/" + std::to_string(i), cliques[i], host.vertex_count());
    try {
        if (r.has("colouring")) {
            EdgeColouring chi = parse_colouring(host, r.string("colouring", ""));
            return build_lll_instance(templ, std::move(cliques), chi, static_cast<Colour>(r.positive("avoid", 1)));
        }
        if (!r.has("bad")) throw ConfigError(r.where("bad"), "need either 'bad' or 'colouring'");
        const Json& bad = r.raw().at("bad");
        if (!bad.is_array() || bad.size() != templ.edge_count()) throw ConfigError(r.where("bad"), "need one list per template edge");
        std::vector<std::vector<HostPair>> pairs(bad.size());
        for (std::size_t i = 0; i < bad.size(); ++i)
            for (std::size_t j = 0; j < bad[i].size(); ++j) {
                const Json& q = bad[i][j];
                if (!q.is_array() || q.size() != 2 || !q[0].is_number_unsigned() || !q[1].is_number_unsigned())
                    throw ConfigError(r.where("bad") + "/" + std::to_string(i) + "/" + std::to_string(j), "expected [x, y]");
                pairs[i].emplace_back(q[0].get<Vertex>(), q[1].get<Vertex>());
            }
        return make_lll_instance(templ, std::move(cliques), host, std::move(pairs));
    } catch (const DomainError& e) {
        throw ConfigError(r.pointer().empty() ? "/" : r.pointer(), e.what());
    } catch (const PreconditionError& e) {
        throw ConfigError(r.pointer().empty() ? "/" : r.pointer(), e.what());
    }
}

int cmd_lll_embed(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    Json inline_instance;
    std::optional<ConfigReader> ir;
    if (r.has("instance") && r.raw().at("instance").is_string()) {
        try {
            inline_instance = Json::parse(read_file(r.string("instance", "")));
        } catch (const std::exception& e) {
            throw ConfigError(r.where("instance"), e.what());
        }
        ir.emplace(inline_instance, r.where("instance"));
    } else {
        ir.emplace(r.child("instance"));
    }
    LLLInstance inst = read_lll_instance(*ir);
    std::size_t budget = r.integer("max_resamples", 0);
    if (budget == 0) budget = std::max<std::size_t>(1, 100 * inst.templ.edge_count());
    std::uint64_t seed = r.integer("seed", 0);
    Json report = header("lll-embed", p);
    report["dependencyDegree"] = inst.dependency_degree;
    report["conditionValue"] = to_json(inst.condition_value());
    report["conditionCertified"] = inst.condition_certified();
    try {
        LLLResult res = lll_embed(inst, seed, budget);
        report["stats"] = to_json(res.stats);
        report["embedding"] = to_json(res.embedding);
        c.emit(report);
        return kOk;
    } catch (const LLLFailure& e) {
        report["stats"] = to_json(e.stats());
        report["failure"] = e.what();
        throw HonestNegative(e.what(), report);
    }
}

int cmd_constants(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    GoodQuadruple q = read_quadruple(r);
    bool require = !r.boolean("allow_bad_input", false);
    ConstantsChain ch;
    try {
        ch = constants_chain(r.positive("k"), r.positive("s"), r.positive("r"), r.positive("t"), q, r.positive("d0", 1), require);
    } catch (const DomainError& e) {
        throw ConfigError("/", e.what());
    }
    Json report = header("constants", p);
    report["chain"] = to_json(ch);
    c.emit(report);
    return kOk;
}

int cmd_step(Command& c) {
    Json p = c.params();
    PipelineConfig cfg = pipeline_params(p);
    Json report{{"schemaVersion", kSchemaVersion}, {"command", "step"}, {"config", to_json(cfg)}};
    StepHost sh;
    try {
        sh = build_step_host(cfg);
    } catch (const CertificationFailure& e) {
        report["outcome"] = Json{{"kind", "honestFailure"}, {"stage", "generation"}, {"reason", e.what()}};
        throw HonestNegative(e.what(), report);
    }
    EdgeColouring chi = make_colouring(sh.host, cfg.s, cfg.colouring, cfg.seeds.colouring, cfg.colouring_colour);
    report["host"] = Json{{"baseVertices", sh.g.vertex_count()},
                          {"baseEdges", sh.g.edge_count()},
                          {"hostVertices", sh.host.host.vertex_count()},
                          {"hostEdges", sh.host.host.edge_count()},
                          {"generation", to_json(sh.generation.log)}};
    StepOutcome o = induction_step(sh.g, sh.host, chi, cfg);
    report["outcome"] = outcome_to_json(o);
    report["trace"] = o.trace;
    c.emit_file("trace", dump(trace_to_json(o)));
    if (o.kind == OutcomeKind::HonestFailure) throw HonestNegative(o.reason, report);
    c.emit(report);
    return kOk;
}

int cmd_report(Command& c) {
    Json p = c.params();
    ConfigReader r(p);
    PipelineConfig cfg = pipeline_params(p);
    std::vector<std::size_t> ns{10, 20, 40, 80};
    if (r.has("ns")) {
        auto v = vertex_list(r, "ns");
        ns.assign(v.begin(), v.end());
        if (ns.empty()) throw ConfigError(r.where("ns"), "need at least one n");
    }
    const std::size_t R = cfg.host_power(), T = cfg.T;
    const auto& q = cfg.host_params.quad;
    if (denominator(q.b) != 1) throw ConfigError("/host/b", "the sweep needs an integer degree bound");
    const std::size_t b = numerator(q.b).convert_to<std::size_t>();
    Json report = header("report", p);
    // Keeps the expected degree fixed across the sweep; a fixed p would let
    // the degree grow with n until every attempt fails the bound b.
    std::optional<Rational> degree;
    if (r.has("expected_degree")) {
        degree = r.rational("expected_degree");
        if (*degree <= 0) throw ConfigError(r.where("expected_degree"), "must be positive");
    }
    std::size_t current = 0;
    EdgeBudgetSweep sweep;
    try {
        sweep = edge_budget_sweep(ns, R, T, q.a, b, [&](std::size_t n) {
            current = n;
            ClassPParams params = cfg.host_params;
            params.n = n;
            GenerationConfig gen = cfg.host_generation;
            gen.seed = derive_seed(cfg.seeds.generation, n);
            if (degree) {
                std::size_t vertices = ClassPParams::scaled(q.a, n);
                gen.p = vertices > 1 ? std::min(Rational(1), Rational(*degree / (vertices - 1))) : Rational(1);
            }
            return generate_class_p(params, gen).graph;
        });
    } catch (const CertificationFailure& e) {
        report["failure"] = Json{{"n", current}, {"reason", e.what()}};
        throw HonestNegative("generation failed at n=" + std::to_string(current), report);
    }
    report["R"] = R;
    report["T"] = T;
    report["sweep"] = to_json(sweep);
    c.emit(report);
    return sweep.bounded ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Size-Ramsey toolkit for powers of paths"};
    app.require_subcommand(1);
    std::vector<std::unique_ptr<Command>> commands;

    auto add = [&](const std::string& name, const std::string& help, std::function<int(Command&)> run) -> Command& {
        auto cmd = std::make_unique<Command>();
        cmd->app = app.add_subcommand(name, help);
        cmd->app->add_option("--config", cmd->config, "JSON parameter file");
        cmd->app->add_option("--out", cmd->out, "report file (stdout when absent)");
        cmd->app->add_option("--seed", cmd->seed, "seed; overrides the config");
        cmd->run = std::move(run);
        commands.push_back(std::move(cmd));
        return *commands.back();
    };

    auto add_class_flags = [](Command& c) {
        c.param("--a", "a", "vertex factor a");
        c.param("--b", "b", "degree bound b");
        c.param("--c", "c", "pair-set factor c");
        c.param("--eps", "eps", "density tolerance");
        c.param("--t", "t", "girth parameter t");
        c.param("--n", "n", "n");
    };

    {
        auto& c = add("gen", "generate a class-P graph", cmd_gen);
        add_class_flags(c);
        c.param("--p", "p", "edge probability (toy mode)");
        c.param("--mode", "mode", "toy | paper");
        c.param("--certify", "certify", "true | false");
        c.output("--edges-out", "edges", "write the graph as an edge list");
    }
    {
        auto& c = add("verify-p", "check class-P membership", cmd_verify_p);
        c.param("--graph", "graph", "graph file");
        add_class_flags(c);
        c.param("--verify-mode", "verify_mode", "auto | exhaustive | sampled");
        c.param("--samples", "samples", "pairs per sampled check");
    }
    {
        auto& c = add("power", "k-th power of a graph", cmd_power);
        c.param("--graph", "graph", "graph file");
        c.param("--k", "k", "power");
        c.output("--edges-out", "edges", "write the power as an edge list");
    }
    {
        auto& c = add("blowup", "complete or sheared blow-up", cmd_blowup);
        c.param("--graph", "graph", "graph file");
        c.param("--t", "t", "clique size");
        c.param("--kind", "kind", "sheared | complete");
        c.param("--matching", "matching", "aligned | seeded");
        c.output("--edges-out", "edges", "write the host as an edge list");
    }
    {
        auto& c = add("partition", "cover a 2-coloured complete graph by blue paths and a red multipartite part", cmd_partition);
        c.param("--graph", "graph", "blue graph file; non-edges are red");
        c.param("--ell", "ell", "number of blue paths");
        c.param("--mode", "mode", "auto | exhaustive | heuristic");
        c.param("--restarts", "restarts", "heuristic restarts");
    }
    {
        auto& c = add("longpath", "long path cycling through vertex parts", cmd_longpath);
        c.param("--graph", "graph", "graph file");
        c.param("--parts", "parts", "parts as 0,1,2|3,4,5");
        c.param("--length", "length", "vertices on the path");
        c.param("--gamma", "gamma", "expansion parameter for the pre-check");
        c.param("--precheck", "precheck", "true | false");
        c.param("--node-budget", "node_budget", "search node budget");
    }
    {
        auto& c = add("segments", "split a path into segments and build the auxiliary graph", cmd_segments);
        c.param("--graph", "graph", "graph file");
        c.param("--path", "path", "path as 0,1,2,...");
        c.param("--t", "t", "segment length");
        c.output("--edges-out", "edges", "write the auxiliary graph as an edge list");
    }
    {
        auto& c = add("aux-colour", "monochromatic subcliques and the auxiliary colouring", cmd_aux_colour);
        c.param("--graph", "graph", "base graph file (generated from the config when absent)");
    }
    {
        auto& c = add("arrow", "decide host -> (pattern)_s", cmd_arrow);
        c.param("--host", "host", "host graph file");
        c.param("--pattern", "pattern", "pattern graph file");
        c.param("--colours", "colours", "number of colours");
        c.param("--mode", "mode", "exhaustive | randomized");
        c.param("--budget", "budget", "exhaustive colouring budget");
        c.param("--trials", "trials", "randomized trials");
        c.param("--threads", "threads", "worker threads (0: all cores)");
    }
    {
        auto& c = add("embed-base", "embed P_n^k into G^k{k+1}", cmd_embed_base);
        c.param("--graph", "graph", "base graph file (generated from the config when absent)");
        c.param("--k", "k", "power");
        c.param("--n", "n", "pattern length");
    }
    {
        auto& c = add("lll-embed", "Local Lemma embedding of a template into cliques", cmd_lll_embed);
        c.param("--instance", "instance", "instance JSON file");
        c.param("--max-resamples", "max_resamples", "resampling budget (0: 100 per template edge)");
    }
    {
        auto& c = add("constants", "constants chain for (k, s, r, t, a, b, c, eps, d0)", cmd_constants);
        c.param("--k", "k", "power");
        c.param("--s", "s", "colours");
        c.param("--r", "r", "lower power");
        c.param("--t", "t", "lower blow-up");
        c.param("--quad", "quad", "a,b,c,eps");
        c.param("--d0", "d0", "degree parameter d0");
        c.param("--allow-bad-input", "allow_bad_input", "true to accept a quadruple that is not good");
    }
    {
        auto& c = add("step", "one induction step on a generated host", cmd_step);
        c.output("--trace-out", "trace", "also write the stage trace here");
    }
    {
        auto& c = add("report", "edge budget of G^R{T} and its growth in n", cmd_report);
        c.param("--ns", "ns", "sweep values as 10,20,40");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }

    for (auto& cmd : commands) {
        if (!cmd->app->parsed()) continue;
        try {
            return cmd->run(*cmd);
        } catch (const HonestNegative& e) {
            Json report = e.report();
            report["status"] = "honestNegative";
            try {
                cmd->emit(report);
            } catch (const std::exception& w) {
                std::cerr << "error: " << w.what() << "\n";
                return kError;
            }
            std::cerr << cmd->app->get_name() << ": " << e.what() << "\n";
            return kNegative;
        } catch (const ConfigError& e) {
            std::cerr << "config error at " << e.what() << "\n";
            return kError;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kError;
        }
    }
    return kError;
}
