// Acceptance gate: one PASS/FAIL line per criterion, each checked against an
// oracle written here rather than the module's own verifier where one is
// practical. Usage: acceptance [path-to-cli step-config]
//
// The last two arguments enable the command-line half of criterion 10.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "sizeramsey/sizeramsey.hpp"
#include "test_support.hpp"

namespace {

using namespace sizeramsey;
using sizeramsey::testing::brute_force_girth;
using sizeramsey::testing::floyd_warshall;
using sizeramsey::testing::random_graph;
using sizeramsey::testing::synthetic_lll;

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs <= limit_s;
    bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " | " << o.detail;
    line.precision(3);
    line << std::fixed << " | " << secs << " s (limit " << limit_s << " s" << (in_time ? "" : ", EXCEEDED") << ")";
    std::cout << line.str() << std::endl;
}

std::size_t choose2(std::size_t t) { return t * (t - 1) / 2; }

// P_n^k into host by map, adjacency only.
bool carries_path_power(const std::vector<Vertex>& map, std::size_t n, std::size_t k, const Graph& host) {
    if (map.size() != n || std::set<Vertex>(map.begin(), map.end()).size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n && j <= i + k; ++j)
            if (!host.has_edge(map[i], map[j])) return false;
    return true;
}

std::vector<std::vector<Vertex>> all_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> cur;
    std::function<void(Vertex)> rec = [&](Vertex from) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (Vertex v = from; v < n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// min and max of e(X, Y) over disjoint k-sets, by enumeration over bitmasks
// (graphs on at most 32 vertices).
std::pair<std::size_t, std::size_t> pair_extremes(const Graph& g, std::size_t k) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> adj(n, 0);
    for (const Edge& e : g.edges()) {
        adj[e.u] |= std::uint32_t{1} << e.v;
        adj[e.v] |= std::uint32_t{1} << e.u;
    }
    std::vector<std::uint32_t> masks;
    for (const auto& set : all_subsets(n, k)) {
        std::uint32_t m = 0;
        for (Vertex v : set) m |= std::uint32_t{1} << v;
        masks.push_back(m);
    }
    std::size_t lo = SIZE_MAX, hi = 0;
    for (std::size_t i = 0; i < masks.size(); ++i)
        for (std::size_t j = i + 1; j < masks.size(); ++j) {
            if (masks[i] & masks[j]) continue;
            std::size_t e = 0;
            for (std::uint32_t x = masks[i]; x; x &= x - 1) e += static_cast<std::size_t>(__builtin_popcount(adj[__builtin_ctz(x)] & masks[j]));
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
    return {lo, hi};
}

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::cout << "acceptance gate" << std::endl;

    criterion(1, "blow-up edge formulas, 200 random (h, t)", 5, [] {
        std::mt19937_64 gen(1);
        std::size_t mismatches = 0;
        for (int i = 0; i < 200; ++i) {
            std::size_t nv = 1 + gen() % 12, t = 1 + gen() % 4;
            Graph h = random_graph(nv, 0.1 * static_cast<double>(gen() % 10), gen());
            std::size_t e = h.edge_count();
            Blowup full = complete_blowup(h, t);
            Blowup sheared = sheared_blowup(h, t, MatchingRule::seeded(gen()));
            mismatches += full.host.edge_count() != e * t * t + nv * choose2(t);
            mismatches += sheared.host.edge_count() != e * (t * t - t) + nv * choose2(t);
            mismatches += full.host.vertex_count() != nv * t || sheared.host.vertex_count() != nv * t;
        }
        return Outcome{mismatches == 0, std::to_string(mismatches) + " mismatches"};
    });

    criterion(2, "base-case embedding on 100 seeded instances, k in {1,2,3}, n <= 30", 30, [] {
        std::mt19937_64 gen(2);
        int ok = 0;
        for (int i = 0; i < 100; ++i) {
            std::size_t k = 1 + i % 3, n = 2 + gen() % 29, extra = n + gen() % 10;
            // A random graph on `extra` vertices that contains a hidden path on n of them.
            std::vector<Vertex> perm(extra);
            for (Vertex v = 0; v < extra; ++v) perm[v] = v;
            std::shuffle(perm.begin(), perm.end(), gen);
            Graph noise = random_graph(extra, 0.15, gen());
            std::vector<Edge> edges(noise.edges().begin(), noise.edges().end());
            for (std::size_t j = 0; j + 1 < n; ++j) edges.push_back(make_edge(perm[j], perm[j + 1]));
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            Graph g(extra, edges);
            PathWitness path{std::vector<Vertex>(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n)), std::nullopt};
            BaseCaseEmbedding res = embed_base_case(g, k, path);
            // Independent host: G^k by distances, sheared blow-up by definition.
            auto d = floyd_warshall(g);
            bool host_ok = res.host.host.vertex_count() == extra * (k + 1);
            for (Vertex u = 0; u < extra && host_ok; ++u)
                for (Vertex v = u + 1; v < extra && host_ok; ++v)
                    if (d[u][v] > k)
                        for (std::size_t a = 0; a <= k; ++a)
                            for (std::size_t b = 0; b <= k; ++b)
                                host_ok &= !res.host.host.has_edge(static_cast<Vertex>(u * (k + 1) + a), static_cast<Vertex>(v * (k + 1) + b));
            ok += host_ok && carries_path_power(res.embedding.map, n, k, res.host.host);
        }
        return Outcome{ok == 100, std::to_string(ok) + "/100 embeddings accepted"};
    });

    criterion(3, "classical arrow facts by exhaustive search", 60, [] {
        auto k3 = arrow_check(complete_graph(3), path_graph(3), 2).result == ArrowResult::Arrows;
        auto p4 = arrow_check(path_graph(4), path_graph(3), 2);
        auto k6 = arrow_check(complete_graph(6), complete_graph(3), 2).result == ArrowResult::Arrows;
        auto k5 = arrow_check(complete_graph(5), complete_graph(3), 2);
        // The counterexamples must really avoid the pattern.
        auto mono_free = [](const ArrowVerdict& v, const Graph& host, const Graph& pattern) {
            if (!v.counterexample) return false;
            for (Colour c = 1; c <= 2; ++c)
                if (find_subgraph(v.counterexample->colour_class(c), pattern)) return false;
            return host.vertex_count() > 0;
        };
        bool p4_ok = p4.result == ArrowResult::DoesNotArrow && mono_free(p4, path_graph(4), path_graph(3));
        bool k5_ok = k5.result == ArrowResult::DoesNotArrow && mono_free(k5, complete_graph(5), complete_graph(3));
        std::string detail = std::string("K3->P3 ") + (k3 ? "true" : "false") + ", P4->P3 " + (p4_ok ? "false" : "?") + ", K6->K3 " +
                             (k6 ? "true" : "false") + ", K5->K3 " + (k5_ok ? "false" : "?");
        return Outcome{k3 && p4_ok && k6 && k5_ok, detail};
    });

    criterion(4, "path-cover partition of every 2-colouring of K_n, n <= 6, l = 1", 600, [] {
        std::uint64_t checked = 0, bad = 0;
        for (std::size_t n = 1; n <= 6; ++n) {
            std::vector<Edge> all;
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
                std::vector<Edge> blue_edges;
                for (std::size_t i = 0; i < all.size(); ++i)
                    if (mask >> i & 1) blue_edges.push_back(all[i]);
                Graph blue(n, blue_edges);
                PartitionResult res = partition_two_coloured(blue, 1, PartitionMode::Exhaustive, 0, 1);
                ++checked;
                // Independent check: blue paths, equal red classes, red between classes, full cover.
                bool ok = res.blue_paths.size() <= 1 && res.red_classes.size() == 2 &&
                          res.red_classes[0].size() == res.red_classes[1].size();
                std::vector<int> seen(n, 0);
                for (const auto& p : res.blue_paths) {
                    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
                        ++seen[p.vertices[i]];
                        if (i + 1 < p.vertices.size()) ok &= blue.has_edge(p.vertices[i], p.vertices[i + 1]);
                    }
                }
                for (const auto& cls : res.red_classes)
                    for (Vertex v : cls) ++seen[v];
                if (ok)
                    for (Vertex x : res.red_classes[0])
                        for (Vertex y : res.red_classes[1]) ok &= !blue.has_edge(x, y);
                for (int s : seen) ok &= s == 1;
                ok &= verify_partition(blue, res, 1).ok;
                bad += !ok;
            }
        }
        return Outcome{bad == 0, std::to_string(checked) + " colourings, " + std::to_string(bad) + " failures"};
    });

    criterion(5, "K_{2,2}-free bipartite sweep, x <= 5, k = 1", 600, [] {
        const std::size_t zarankiewicz[] = {0, 1, 3, 6, 9, 12};
        std::uint64_t violations = 0;
        bool extremal = true;
        std::ostringstream detail;
        for (std::size_t x = 1; x <= 5; ++x) {
            KstSweep s = kst_exhaustive_sweep(x, 1);
            violations += s.violations;
            extremal &= s.max_free_edges == zarankiewicz[x];
            extremal &= static_cast<double>(s.max_free_edges) <= 4.0 * std::pow(static_cast<double>(x), 1.5);
            detail << "x=" << x << ":" << s.max_free_edges << " ";
        }
        detail << "| " << violations << " violations";
        return Outcome{violations == 0 && extremal, detail.str()};
    });

    criterion(6, "toy class-P generator output verified, 50 seeds, an = 16", 120, [] {
        ClassPParams params{{Rational(2), Rational(100), Rational(1, 2), Rational(1, 2)}, 1, 8};
        GenerationConfig cfg;
        cfg.p = Rational(9, 10);
        cfg.sample_tolerance = Rational(1, 2);
        int ok = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            cfg.seed = seed;
            GenerationResult res = generate_class_p(params, cfg);
            const Graph& g = res.graph;
            ClassPReport rep = verify_class_p(g, params, VerifyMode::exhaustive());
            // (i) vertex count, (ii) degree, (iv) girth > 2t (vacuous at t = 1) by hand.
            bool own = g.vertex_count() == 16 && max_degree(g) <= 100;
            std::size_t girth = brute_force_girth(g);
            own &= girth == 0 || girth > 2 * params.t;
            // (iii): some f fits every disjoint 4-set pair within 1 +- eps.
            auto [lo, hi] = pair_extremes(g, 4);
            Rational dlo(lo, 16), dhi(hi, 16);
            own &= dhi / Rational(3, 2) <= dlo / Rational(1, 2) && lo > 0;
            ok += own && rep.passed() && rep.density.exhaustive;
        }
        return Outcome{ok == 50, std::to_string(ok) + "/50 pass"};
    });

    criterion(7, "edge-boost on 50 toy expanders with the mu-hypothesis, an = 14", 300, [] {
        const std::size_t n = 14, beta = 4, mu = 2;
        int found = 0, violations = 0;
        for (std::uint64_t seed = 0; found < 50 && seed < 5000; ++seed) {
            Graph g = random_graph(n, 0.8, 1000 + seed);
            if (pair_extremes(g, mu).first == 0) continue;   // hypothesis fails
            ++found;
            EdgeBoostReport rep = verify_edgeboost(g, n, beta, mu);
            std::size_t lo = pair_extremes(g, beta).first;
            bool holds = Rational(lo) >= Rational(beta * beta, 2 * mu);
            violations += !holds || !rep.hypothesis_holds || !rep.conclusion_holds || rep.min_edges != lo;
        }
        return Outcome{found == 50 && violations == 0, std::to_string(found) + " expanders, " + std::to_string(violations) + " violations"};
    });

    criterion(8, "Local Lemma embedder on 50 certified synthetic instances", 60, [] {
        int ok = 0, certified = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            auto s = synthetic_lll(40, 4, 8, seed);
            LLLInstance inst = make_lll_instance(s.templ, s.cliques, s.host, s.bad);
            if (!inst.condition_certified()) continue;
            ++certified;
            try {
                LLLResult res = lll_embed(inst, seed, 100 * s.templ.edge_count());
                bool good = std::set<Vertex>(res.embedding.map.begin(), res.embedding.map.end()).size() == res.embedding.map.size();
                const auto& edges = s.templ.edges();
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    Vertex x = res.embedding.map[edges[i].u], y = res.embedding.map[edges[i].v];
                    good &= s.host.has_edge(x, y);
                    for (const auto& [bx, by] : s.bad[i]) good &= !((bx == x && by == y) || (bx == y && by == x));
                }
                for (Vertex v = 0; v < s.templ.vertex_count(); ++v)
                    good &= std::count(s.cliques[v].begin(), s.cliques[v].end(), res.embedding.map[v]) == 1;
                ok += good;
            } catch (const LLLFailure&) {
            }
        }
        return Outcome{certified == 50 && ok == 50, std::to_string(ok) + "/" + std::to_string(certified) + " certified instances embedded"};
    });

    criterion(9, "constants chain quotes and exact T", 1, [] {
        GoodQuadruple quoted{Rational(3), Rational(950400), Rational(1), Rational(1, 20)};
        bool ok = true;
        for (std::size_t t : {2u, 3u, 5u})
            for (std::size_t r : {1u, 2u, 4u}) {
                auto ch = constants_chain(1, 2, r, t, quoted, 1);
                ok &= ch.R == t * r && ch.delta == quoted.eps / 2;
            }
        auto tiny = constants_chain(1, 2, 1, 2, GoodQuadruple{Rational(3), Rational(2), Rational(1), Rational(1, 20)}, 1, false);
        bool exact = tiny.T && *tiny.T == (BigInt(1) << 32) && tiny.t_prime == 16;
        return Outcome{ok && exact, std::string("R = tr, delta = eps/2 ") + (ok ? "exact" : "WRONG") + "; T = " + (tiny.T ? tiny.T->str() : "none")};
    });

    criterion(10, "step determinism: identical config and seed give identical bytes", 60, [&] {
        Json cfg_json = Json::parse(R"({"k":1,"s":2,"r":1,"t":2,"n":4,"T":6,"Tprime":4,
            "host":{"a":2,"b":100,"c":"1/2","eps":"1/2","t":1,"n":16,"p":"9/10","sample_tolerance":"1/2"},
            "lower":{"a":2,"b":100,"c":"1/2","eps":"1/2","n":4},
            "colouring":{"kind":"no-blue-biclique"},"continue_on_hypothesis_failure":true,"seed":7})");
        auto run = [&] {
            PipelineConfig cfg = read_pipeline_config(cfg_json);
            StepHost sh = build_step_host(cfg);
            EdgeColouring chi = make_colouring(sh.host, cfg.s, cfg.colouring, cfg.seeds.colouring, cfg.colouring_colour);
            StepOutcome o = induction_step(sh.g, sh.host, chi, cfg);
            return std::make_pair(dump(outcome_to_json(o)), dump(trace_to_json(o)));
        };
        auto a = run(), b = run();
        bool ok = a == b;
        std::string detail = std::string("library ") + (ok ? "identical" : "DIFFERENT");
        if (argc >= 3) {
            std::string cli = argv[1], config = argv[2];
            std::string base = "acceptance_step_";
            int rc_total = 0;
            for (int i = 0; i < 2; ++i) {
                std::string cmd = "\"" + cli + "\" step --config \"" + config + "\" --out " + base + std::to_string(i) + ".json --trace-out " +
                                  base + std::to_string(i) + ".trace.json";
                rc_total += std::system(cmd.c_str()) != 0;
            }
            bool same = read_all(base + "0.json") == read_all(base + "1.json") &&
                        read_all(base + "0.trace.json") == read_all(base + "1.trace.json") && !read_all(base + "0.json").empty();
            ok &= rc_total == 0 && same;
            detail += std::string(", cli ") + (same ? "identical" : "DIFFERENT") + (rc_total ? " (nonzero exit)" : "");
        } else {
            detail += ", cli not exercised";
        }
        return Outcome{ok, detail};
    });

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
