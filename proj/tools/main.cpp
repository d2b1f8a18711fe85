#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pursuit/atlas.hpp"
#include "pursuit/bounds.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/graph.hpp"
#include "pursuit/reduction.hpp"
#include "pursuit/serialize.hpp"
#include "pursuit/verify.hpp"

namespace {

using namespace pursuit;
using nlohmann::json;

constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;

EngineOptions engine_options(int jobs) {
    EngineOptions opts;
    opts.jobs = jobs;
    if (const char* env = std::getenv("ETERNAL_PURSUIT_BUDGET")) {
        char* end = nullptr;
        unsigned long long value = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && value > 0) opts.memo_budget = value;
    }
    return opts;
}

/// A graph argument is either a generator spec (contains ':'), '-' for an
/// edge list on stdin, or a path to an edge-list file.
Graph load_graph(const std::string& source) {
    if (source.find(':') != std::string::npos) return generate(source);
    if (source == "-") return parse_edge_list(std::cin);
    std::ifstream in(source);
    if (!in) throw std::invalid_argument("cannot open graph file '" + source + "'");
    return parse_edge_list(in);
}

bool is_tree(const Graph& g) {
    return g.connected() && g.edge_count() == g.vertex_count() - 1;
}

struct FamilyInfo {
    std::string family;
    int a = 0, b = 0;
};

FamilyInfo family_of(const std::string& source) {
    FamilyInfo info;
    auto colon = source.find(':');
    if (colon == std::string::npos) return info;
    info.family = source.substr(0, colon);
    std::string params = source.substr(colon + 1);
    auto x = params.find('x');
    try {
        if (x == std::string::npos) {
            info.a = std::stoi(params);
        } else {
            info.a = std::stoi(params.substr(0, x));
            info.b = std::stoi(params.substr(x + 1));
        }
    } catch (...) {
        info.family.clear();
    }
    return info;
}

int run_gen(const std::string& source) {
    Graph g = load_graph(source);
    write_edge_list(g, std::cout);
    return 0;
}

int run_solve(const std::string& source, int t, int k, bool asJson, int jobs) {
    Graph g = load_graph(source);
    EngineOptions opts = engine_options(jobs);
    json out;
    if (k > 0) {
        SolveStats stats;
        auto winning = eternal_win_set(g, k, t, opts, &stats);
        bool win = !winning.empty();
        out = {{"graph_hash", hash_hex(g.hash())},
               {"t", t},
               {"k", k},
               {"cops_win", win},
               {"winning_configs", winning.size()},
               {"configs_explored", stats.configs_enumerated},
               {"fixpoint_rounds", stats.fixpoint_rounds}};
        if (asJson) {
            std::cout << out.dump(2) << '\n';
        } else {
            std::cout << (win ? "cops win" : "robber wins") << " with k=" << k << ", t=" << t
                      << " (" << winning.size() << " winning configurations, "
                      << stats.fixpoint_rounds << " fixpoint rounds)\n";
        }
        return 0;
    }
    SolveResult result = eternal_cop_number(g, t, opts);
    out = {{"graph_hash", hash_hex(g.hash())},
           {"t", t},
           {"eternal_cop_number", result.value},
           {"winning_configs", result.certificate.winning.size()},
           {"configs_explored", result.stats.configs_enumerated},
           {"fixpoint_rounds", result.stats.fixpoint_rounds}};
    if (asJson)
        std::cout << out.dump(2) << '\n';
    else
        std::cout << "eternal cop number at t=" << t << ": " << result.value << " ("
                  << result.stats.configs_enumerated << " configs explored, "
                  << result.stats.fixpoint_rounds << " fixpoint rounds)\n";
    return 0;
}

int run_capt(const std::string& source, int k, bool asJson, int jobs) {
    Graph g = load_graph(source);
    auto time = capture_time(g, k, engine_options(jobs));
    if (asJson) {
        json out = {{"graph_hash", hash_hex(g.hash())}, {"k", k}};
        if (time)
            out["capture_time"] = *time;
        else
            out["capture_time"] = "infinite";
        std::cout << out.dump(2) << '\n';
    } else if (time) {
        std::cout << "capt_" << k << " = " << *time << '\n';
    } else {
        std::cout << "capt_" << k << " = infinite\n";
    }
    return 0;
}

json bound_with_cross_check(const Graph& g, int t, const BoundReport& report,
                            const EngineOptions& opts) {
    json j = report_to_json(report);
    if (g.vertex_count() <= 12) {
        EngineOptions capped = opts;
        capped.memo_budget = std::min<std::size_t>(capped.memo_budget, 20'000'000);
        try {
            j["exact"] = eternal_cop_number(g, t, capped).value;
        } catch (const BudgetExceeded&) {
        }
    }
    return j;
}

int run_bound(const std::string& source, int t, const std::string& which, bool asJson,
              int jobs) {
    Graph g = load_graph(source);
    EngineOptions opts = engine_options(jobs);
    FamilyInfo info = family_of(source);
    std::vector<BoundReport> reports;
    auto want = [&](const std::string& name) { return which == "all" || which == name; };

    if (want("path-formula") && info.family == "path") {
        BoundReport r;
        r.name = "path-formula";
        r.kind = BoundKind::Exact;
        r.value = path_value(info.a, t);
        r.certificate = {{"n", info.a}, {"t", t}};
        reports.push_back(r);
    }
    if (want("cycle-formula") && info.family == "cycle") {
        BoundReport r;
        r.name = "cycle-formula";
        r.kind = BoundKind::Exact;
        r.value = cycle_value(info.a, t);
        r.certificate = {{"n", info.a}, {"t", t}};
        reports.push_back(r);
    }
    if (want("cartesian-grid") && info.family == "grid") {
        GridBounds gb = cartesian_grid_bounds(info.a, info.b, t);
        reports.push_back(gb.lower);
        reports.push_back(gb.upper);
    }
    if (want("strong-grid") && info.family == "king") {
        GridBounds gb = strong_grid_bounds({info.a, info.b}, t);
        reports.push_back(gb.lower);
        reports.push_back(gb.upper);
    }
    if ((want("tree-decomposition") || want("tree-scattered")) && is_tree(g)) {
        if (want("tree-decomposition")) reports.push_back(tree_bound(g, t, opts).report);
        if (want("tree-scattered")) reports.push_back(tree_lower_bound(g, t));
    }
    if (want("recurrent-attack")) {
        auto [i, k] = minimal_parameters(g, t, opts);
        reports.push_back(recurrent_attack_bound(g, t, i, k, opts));
    }
    if (want("distance-domination") && g.vertex_count() <= 24)
        reports.push_back(distance_domination_bound(g, t));

    if (reports.empty()) {
        std::cerr << "no bound named '" << which << "' applies to this graph\n";
        return kExitParse;
    }
    json out = json::array();
    for (const auto& r : reports) out.push_back(bound_with_cross_check(g, t, r, opts));
    if (asJson) {
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& j : out) {
            std::cout << j["name"].get<std::string>() << " (" << j["kind"].get<std::string>()
                      << "): " << j["value"].get<long long>();
            if (j.contains("numerator"))
                std::cout << " = ceil(" << j["numerator"].get<long long>() << "/"
                          << j["denominator"].get<long long>() << ")";
            if (j.contains("exact")) std::cout << "   [exact: " << j["exact"].get<int>() << "]";
            std::cout << '\n';
        }
    }
    return 0;
}

int run_reduce(const std::string& instancePath, int t, bool asJson) {
    SetCoverInstance instance;
    if (instancePath == "-") {
        instance = parse_set_cover(std::cin);
    } else {
        std::ifstream in(instancePath);
        if (!in) throw std::invalid_argument("cannot open instance file '" + instancePath + "'");
        instance = parse_set_cover(in);
    }
    ReductionGraph r = build_reduction(instance, t);
    if (asJson) {
        std::ostringstream edgeList;
        write_edge_list(r.graph, edgeList);
        json out = roles_to_json(r);
        out["edge_list"] = edgeList.str();
        std::cout << out.dump(2) << '\n';
    } else {
        write_edge_list(r.graph, std::cout);
    }
    return 0;
}

int run_verify(const std::string& suite, int maxN, int maxT, bool asJson, int jobs) {
    EngineOptions opts = engine_options(jobs);
    std::vector<CheckRecord> records;
    auto append = [&](std::vector<CheckRecord> more) {
        records.insert(records.end(), more.begin(), more.end());
    };
    if (suite == "paths" || suite == "all") append(verify_paths(maxN, maxT, opts));
    if (suite == "cycles" || suite == "all") append(verify_cycles(maxN, maxT, opts));
    if (suite == "trees" || suite == "all") append(verify_trees(std::min(maxN, 8), maxT, opts));
    if (suite == "grids" || suite == "all") append(verify_grids(maxN, maxT, opts));
    if (suite == "reduction" || suite == "all") append(verify_reduction_suite(maxT, opts));
    if (records.empty()) {
        std::cerr << "unknown suite '" << suite << "'\n";
        return kExitParse;
    }
    int mismatches = 0;
    json out = json::array();
    for (const auto& r : records) {
        if (!r.ok) ++mismatches;
        out.push_back({{"suite", r.suite},
                       {"instance", r.instance},
                       {"expected", r.expected},
                       {"actual", r.actual},
                       {"ok", r.ok}});
        if (!asJson)
            std::cout << (r.ok ? "ok   " : "FAIL ") << r.suite << ": " << r.instance
                      << " (expected " << r.expected << ", got " << r.actual << ")\n";
    }
    if (asJson) std::cout << out.dump(2) << '\n';
    std::cerr << records.size() << " checks, " << mismatches << " mismatches\n";
    return mismatches == 0 ? 0 : kExitMismatch;
}

int run_play(const std::string& source, int t, int k, int jobs) {
    Graph g = load_graph(source);
    EngineOptions opts = engine_options(jobs);
    StrategyTable table;
    try {
        table = extract_strategy(g, k, t, opts);
    } catch (const std::invalid_argument&) {
        std::cout << k << " cop(s) cannot win eternally on this graph at t=" << t
                  << "; the robber wins\n";
        return kExitMismatch;
    }
    std::cout << "graph: " << g.vertex_count() << " vertices; you are the robber\n";
    std::cout << "cops start at [";
    for (std::size_t i = 0; i < table.start.size(); ++i)
        std::cout << (i ? " " : "") << table.start[i];
    std::cout << "]; capture budget per play: " << t << " time-steps; 'q' quits\n";

    PlaySession session(g, table);
    std::string line;
    for (;;) {
        if (session.phase() == PlaySession::Phase::AwaitingPlacement)
            std::cout << "place robber> " << std::flush;
        else
            std::cout << "robber move (steps left " << session.steps_left() << ")> "
                      << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (line == "q" || line == "quit") break;
        int v;
        try {
            v = std::stoi(line);
        } catch (...) {
            std::cout << "enter a vertex number or 'q'\n";
            continue;
        }
        bool captured = false;
        std::string msg = session.phase() == PlaySession::Phase::AwaitingPlacement
                              ? session.place_robber(v, &captured)
                              : session.move_robber(v, &captured);
        std::cout << msg << '\n';
        if (captured)
            std::cout << "play " << session.plays_completed() << " done; a new robber may appear\n";
        if (session.phase() == PlaySession::Phase::Done) return kExitMismatch;
    }
    std::cout << "plays completed: " << session.plays_completed() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solver and bounds toolkit for timed eternal pursuit on graphs"};
    app.require_subcommand(1);
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for solver sweeps");

    std::string graphArg, which = "all", suite = "all", instancePath;
    int t = 1, k = 0, maxN = 8, maxT = 3;
    bool asJson = false;

    auto* gen = app.add_subcommand("gen", "emit a graph in edge-list format");
    gen->add_option("graph", graphArg, "generator spec or edge-list file")->required();

    auto* solve = app.add_subcommand("solve", "eternal cop number, or the fixed-k decision");
    solve->add_option("graph", graphArg)->required();
    solve->add_option("--t", t, "time-steps per play")->required()->check(CLI::PositiveNumber);
    solve->add_option("--k", k, "decide for this many cops instead of minimizing");
    solve->add_flag("--json", asJson);

    auto* capt = app.add_subcommand("capt", "capture time of k cops (or 'infinite')");
    capt->add_option("graph", graphArg)->required();
    capt->add_option("--k", k, "cop count")->required()->check(CLI::PositiveNumber);
    capt->add_flag("--json", asJson);

    auto* bound = app.add_subcommand("bound", "closed-form and decomposition bounds");
    bound->add_option("graph", graphArg)->required();
    bound->add_option("--t", t)->required()->check(CLI::PositiveNumber);
    bound->add_option("--which", which, "bound name or 'all'");
    bound->add_flag("--json", asJson);

    auto* reduce = app.add_subcommand("reduce", "build the set-cover pursuit graph");
    reduce->add_option("instance", instancePath, "set cover instance file ('-' for stdin)")
        ->required();
    reduce->add_option("--t", t)->required()->check(CLI::PositiveNumber);
    reduce->add_flag("--json", asJson);

    auto* verify = app.add_subcommand("verify", "formula-vs-solver verification suites");
    verify->add_option("--suite", suite, "paths|cycles|trees|grids|reduction|all");
    verify->add_option("--max-n", maxN);
    verify->add_option("--max-t", maxT);
    verify->add_flag("--json", asJson);

    auto* play = app.add_subcommand("play", "play the robber against an optimal cop strategy");
    play->add_option("graph", graphArg)->required();
    play->add_option("--t", t)->required()->check(CLI::PositiveNumber);
    play->add_option("--k", k, "cop count")->required()->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (gen->parsed()) return run_gen(graphArg);
        if (solve->parsed()) return run_solve(graphArg, t, k, asJson, jobs);
        if (capt->parsed()) return run_capt(graphArg, k, asJson, jobs);
        if (bound->parsed()) return run_bound(graphArg, t, which, asJson, jobs);
        if (reduce->parsed()) return run_reduce(instancePath, t, asJson);
        if (verify->parsed()) return run_verify(suite, maxN, maxT, asJson, jobs);
        if (play->parsed()) return run_play(graphArg, t, k, jobs);
    } catch (const pursuit::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMismatch;
    }
    return 0;
}
