#include "pursuit/engine.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <sstream>
#include <thread>

namespace pursuit {

namespace {

void check_engine_graph(const Graph& g) {
    if (g.vertex_count() < 1) throw std::invalid_argument("engine: empty graph");
    if (!g.connected()) throw std::invalid_argument("engine: graph must be connected");
    if (g.vertex_count() > 64)
        throw std::invalid_argument("engine: exact solver supports at most 64 vertices");
}

void check_time(int t) {
    if (t < 1) throw std::invalid_argument("engine: the time budget t must be positive");
}

CopConfig canonical_config(CopConfig c, int n) {
    if (c.empty()) throw std::invalid_argument("engine: a configuration needs at least one cop");
    std::sort(c.begin(), c.end());
    if (c.front() < 0 || c.back() >= n)
        throw std::invalid_argument("engine: cop position out of range");
    return c;
}

/// Runs fn(begin, end) over [0, count) in `jobs` chunks.  Chunks write
/// disjoint output cells, so results do not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count < 256) {
        fn(std::size_t{0}, count);
        return;
    }
    std::size_t workers = std::min<std::size_t>(jobs, count);
    std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : threads) th.join();
}

/// Configuration space of k cops on g: the lex-ordered multiset
/// configurations, their occupancy bitmasks, and the cached legal cop
/// moves (every cop steps within its closed neighborhood, as a team).
struct Arena {
    const Graph& g;
    int n;
    int k;
    std::vector<CopConfig> configs;
    std::vector<std::uint64_t> occ;
    std::vector<std::vector<int>> succ;
    std::size_t cells = 0;

    Arena(const Graph& graph, int cops, const EngineOptions& opts)
        : g(graph), n(graph.vertex_count()), k(cops) {
        if (k < 1) throw std::invalid_argument("engine: need at least one cop");
        configs = enumerate_configs(n, k, opts);
        occ.resize(configs.size());
        for (std::size_t id = 0; id < configs.size(); ++id) {
            std::uint64_t mask = 0;
            for (int v : configs[id]) mask |= 1ull << v;
            occ[id] = mask;
        }
        build_moves(opts);
    }

    bool occupied(int id, int v) const { return (occ[id] >> v) & 1; }

    int id_of(const CopConfig& c) const {
        auto it = std::lower_bound(configs.begin(), configs.end(), c);
        if (it == configs.end() || *it != c) return -1;
        return static_cast<int>(it - configs.begin());
    }

    void build_moves(const EngineOptions& opts) {
        succ.resize(configs.size());
        std::size_t total = configs.size() * static_cast<std::size_t>(k);
        CopConfig scratch(k);
        for (std::size_t id = 0; id < configs.size(); ++id) {
            gather_moves(configs[id], 0, scratch, succ[id]);
            std::sort(succ[id].begin(), succ[id].end());
            succ[id].erase(std::unique(succ[id].begin(), succ[id].end()), succ[id].end());
            total += succ[id].size();
            if (total > opts.memo_budget)
                throw BudgetExceeded("engine: cop-move cache exceeds the state budget");
        }
        cells = total;
    }

    void gather_moves(const CopConfig& from, int i, CopConfig& scratch,
                      std::vector<int>& out) {
        if (i == k) {
            CopConfig next = scratch;
            std::sort(next.begin(), next.end());
            out.push_back(id_of(next));
            return;
        }
        for (int v : g.closed_neighborhood(from[i])) {
            scratch[i] = v;
            gather_moves(from, i + 1, scratch, out);
        }
    }
};

/// Win tables of the bounded game against a fixed capture target, for
/// every remaining-step count 0..t.  cop[s] holds states with the cops to
/// move and s full time-steps left; rob[s] holds states after the cop move
/// of a time-step that still has s steps on the clock.
struct Tables {
    int n = 0;
    int t = 0;
    std::vector<std::vector<std::uint8_t>> cop;  // [s][id*n + robber]
    std::vector<std::vector<std::uint8_t>> rob;

    bool cop_win(int s, int id, int r) const {
        return cop[s][static_cast<std::size_t>(id) * n + r];
    }
    bool rob_win(int s, int id, int r) const {
        return rob[s][static_cast<std::size_t>(id) * n + r];
    }
};

void fill_rob_plane(const Arena& a, const std::vector<char>& target,
                    const std::vector<std::uint8_t>* copPrev, int jobs,
                    std::vector<std::uint8_t>& out) {
    int n = a.n;
    parallel_for(a.configs.size(), jobs, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t id = lo; id < hi; ++id) {
            std::uint64_t mask = a.occ[id];
            bool inTarget = target[id];
            for (int r = 0; r < n; ++r) {
                if ((mask >> r) & 1) continue;
                bool ok = true;
                for (int next : a.g.closed_neighborhood(r)) {
                    if ((mask >> next) & 1) {
                        // Robber steps onto a cop: the play ends here, at
                        // the cops' current configuration.
                        if (!inTarget) { ok = false; break; }
                    } else if (copPrev == nullptr ||
                               !(*copPrev)[id * n + next]) {
                        ok = false;
                        break;
                    }
                }
                out[id * n + r] = ok;
            }
        }
    });
}

void fill_cop_plane(const Arena& a, const std::vector<char>& target,
                    const std::vector<std::uint8_t>& robSame, int jobs,
                    std::vector<std::uint8_t>& out) {
    int n = a.n;
    parallel_for(a.configs.size(), jobs, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t id = lo; id < hi; ++id) {
            for (int r = 0; r < n; ++r) {
                if (a.occupied(static_cast<int>(id), r)) continue;
                bool win = false;
                for (int move : a.succ[id]) {
                    if (a.occupied(move, r)) {
                        if (target[move]) { win = true; break; }
                    } else if (robSame[static_cast<std::size_t>(move) * n + r]) {
                        win = true;
                        break;
                    }
                }
                out[id * n + r] = win;
            }
        }
    });
}

Tables solve_bounded_tables(const Arena& a, const std::vector<char>& target, int t,
                            const EngineOptions& opts, SolveStats* stats) {
    std::size_t plane = a.configs.size() * static_cast<std::size_t>(a.n);
    std::size_t need = plane * 2 * (static_cast<std::size_t>(t) + 1) + a.cells;
    if (need > opts.memo_budget)
        throw BudgetExceeded("engine: bounded solve needs " + std::to_string(need) +
                             " cells, budget is " + std::to_string(opts.memo_budget));
    Tables tb;
    tb.n = a.n;
    tb.t = t;
    tb.cop.assign(t + 1, {});
    tb.rob.assign(t + 1, {});
    tb.cop[0].assign(plane, 0);
    for (int s = 1; s <= t; ++s) {
        tb.rob[s].assign(plane, 0);
        fill_rob_plane(a, target, s == 1 ? nullptr : &tb.cop[s - 1], opts.jobs, tb.rob[s]);
        tb.cop[s].assign(plane, 0);
        fill_cop_plane(a, target, tb.rob[s], opts.jobs, tb.cop[s]);
    }
    if (stats) stats->state_cells += static_cast<long long>(need);
    return tb;
}

/// Does this configuration answer every unoccupied placement?  Vacuously
/// true when the cops cover the whole graph.
bool covers_all_placements(const Arena& a, const Tables& tb, int s, int id) {
    for (int r = 0; r < a.n; ++r)
        if (!a.occupied(id, r) && !tb.cop_win(s, id, r)) return false;
    return true;
}

/// Iterates the bounded sweep with unlimited time until the win plane
/// stabilizes.  Reports the first step count at which some configuration
/// answers every placement, if any.
struct StabilizedResult {
    std::vector<std::uint8_t> cop;  // stabilized cop-turn plane
    int first_cover_steps = -1;
    int cover_config = -1;
};

StabilizedResult solve_until_stable(const Arena& a, const EngineOptions& opts,
                                    SolveStats* stats) {
    std::size_t plane = a.configs.size() * static_cast<std::size_t>(a.n);
    if (plane * 4 + a.cells > opts.memo_budget)
        throw BudgetExceeded("engine: unbounded solve exceeds the state budget");
    std::vector<char> target(a.configs.size(), 1);
    StabilizedResult res;
    std::vector<std::uint8_t> copPrev(plane, 0);
    std::vector<std::uint8_t> rob(plane, 0);
    std::vector<std::uint8_t> cop(plane, 0);
    long long maxSteps = static_cast<long long>(plane) * 2 + 2;
    for (long long s = 1; s <= maxSteps; ++s) {
        fill_rob_plane(a, target, s == 1 ? nullptr : &copPrev, opts.jobs, rob);
        fill_cop_plane(a, target, rob, opts.jobs, cop);
        if (res.first_cover_steps < 0) {
            for (std::size_t id = 0; id < a.configs.size(); ++id) {
                bool all = true;
                for (int r = 0; r < a.n; ++r)
                    if (!a.occupied(static_cast<int>(id), r) && !cop[id * a.n + r]) {
                        all = false;
                        break;
                    }
                if (all) {
                    res.first_cover_steps = static_cast<int>(s);
                    res.cover_config = static_cast<int>(id);
                    break;
                }
            }
        }
        if (cop == copPrev) break;  // monotone, so no later level changes
        copPrev = cop;
    }
    if (stats) stats->state_cells += static_cast<long long>(plane) * 4;
    res.cop = std::move(cop);
    return res;
}

std::vector<char> target_mask(const Arena& a, const TargetSet& target) {
    if (target.is_all()) return std::vector<char>(a.configs.size(), 1);
    std::vector<char> mask(a.configs.size(), 0);
    for (const CopConfig& c : target.configs()) {
        int id = a.id_of(canonical_config(c, a.n));
        if (id < 0 || static_cast<int>(c.size()) != a.k)
            throw std::invalid_argument("engine: target configuration has the wrong cop count");
        mask[id] = 1;
    }
    return mask;
}

/// Greatest-fixpoint deletion loop.  history, when supplied, receives the
/// all-configurations seed and then the mask after every round that
/// removed something.
std::vector<char> eternal_fixpoint(const Arena& a, int t, const EngineOptions& opts,
                                   SolveStats* stats,
                                   std::vector<std::vector<char>>* history) {
    std::vector<char> current(a.configs.size(), 1);
    if (history) history->push_back(current);
    for (;;) {
        Tables tb = solve_bounded_tables(a, current, t, opts, stats);
        if (stats) ++stats->fixpoint_rounds;
        bool changed = false;
        bool anyLeft = false;
        std::vector<char> next = current;
        for (std::size_t id = 0; id < a.configs.size(); ++id) {
            if (!current[id]) continue;
            if (covers_all_placements(a, tb, t, static_cast<int>(id))) {
                anyLeft = true;
            } else {
                next[id] = 0;
                changed = true;
            }
        }
        if (history && changed) {
            history->push_back(next);
            if (history->size() * a.configs.size() > opts.memo_budget)
                throw BudgetExceeded("engine: fixpoint history exceeds the state budget");
        }
        current = std::move(next);
        if (!changed || !anyLeft) break;
    }
    return current;
}

int least_member(const std::vector<char>& mask) {
    for (std::size_t id = 0; id < mask.size(); ++id)
        if (mask[id]) return static_cast<int>(id);
    return -1;
}

/// Lexicographically least move preserving the win against `target` from a
/// cop-turn state, or -1 when no certified move exists.
int certified_move(const Arena& a, const Tables& tb, const std::vector<char>& target,
                   int id, int r, int s) {
    for (int move : a.succ[id]) {
        if (a.occupied(move, r)) {
            if (target[move]) return move;
        } else if (tb.rob_win(s, move, r)) {
            return move;
        }
    }
    return -1;
}

int fallback_move(const Arena& a, int id, int r) {
    for (int move : a.succ[id])
        if (a.occupied(move, r)) return move;  // at least end the play
    return a.succ[id].front();
}

StrategyTable extract_table(const Arena& a, const std::vector<char>& winMask, int t,
                            bool certified, bool seedAllConfigs, const EngineOptions& opts,
                            SolveStats* stats) {
    Tables tb = solve_bounded_tables(a, winMask, t, opts, stats);
    int n = a.n;

    StrategyTable table;
    table.graph_hash = a.g.hash();
    table.n = n;
    table.k = a.k;
    table.t = t;
    table.certified = certified;
    for (std::size_t id = 0; id < a.configs.size(); ++id)
        if (winMask[id]) table.winning.push_back(a.configs[id]);
    int startId = least_member(winMask);
    if (startId < 0) throw std::logic_error("extract_strategy: empty win set");
    table.start = a.configs[startId];

    // Forward closure over cop-turn states under the chosen moves and all
    // robber replies.
    std::size_t stateCount =
        a.configs.size() * static_cast<std::size_t>(n) * (static_cast<std::size_t>(t) + 1);
    if (stateCount > opts.memo_budget)
        throw BudgetExceeded("engine: strategy extraction exceeds the state budget");
    std::vector<char> seen(stateCount, 0);
    auto stateIndex = [&](int id, int r, int s) {
        return (static_cast<std::size_t>(id) * n + r) * (t + 1) + s;
    };
    std::vector<std::tuple<int, int, int>> queue;
    auto push = [&](int id, int r, int s) {
        std::size_t idx = stateIndex(id, r, s);
        if (!seen[idx]) {
            seen[idx] = 1;
            queue.emplace_back(id, r, s);
        }
    };
    for (std::size_t id = 0; id < a.configs.size(); ++id) {
        if (!seedAllConfigs && !winMask[id]) continue;
        for (int r = 0; r < n; ++r)
            if (!a.occupied(static_cast<int>(id), r)) push(static_cast<int>(id), r, t);
    }
    while (!queue.empty()) {
        auto [id, r, s] = queue.back();
        queue.pop_back();
        int move = certified_move(a, tb, winMask, id, r, s);
        if (move < 0) {
            if (certified)
                throw std::logic_error("extract_strategy: no certified move in a winning state");
            move = fallback_move(a, id, r);
        }
        table.moves[{a.configs[id], r, s}] = a.configs[move];
        if (a.occupied(move, r)) continue;  // capture; next play re-enters via the seeds
        if (s >= 2)
            for (int next : a.g.closed_neighborhood(r))
                if (!a.occupied(move, next)) push(move, next, s - 1);
    }
    return table;
}

}  // namespace

long long config_count(int n, int k, long long cap) {
    // C(n+k-1, k) via the multiplicative recurrence, bailing out at cap.
    long long result = 1;
    for (int i = 1; i <= k; ++i) {
        __int128 next = static_cast<__int128>(result) * (n - 1 + i) / i;
        if (next > cap)
            throw BudgetExceeded("engine: configuration count exceeds the state budget");
        result = static_cast<long long>(next);
    }
    return result;
}

std::vector<CopConfig> enumerate_configs(int n, int k, const EngineOptions& opts) {
    if (n < 1 || k < 1) throw std::invalid_argument("enumerate_configs: need n >= 1 and k >= 1");
    long long count = config_count(n, k, static_cast<long long>(opts.memo_budget));
    std::vector<CopConfig> out;
    out.reserve(static_cast<std::size_t>(count));
    CopConfig c(k, 0);
    for (;;) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[i] == n - 1) --i;
        if (i < 0) break;
        int v = c[i] + 1;
        for (int j = i; j < k; ++j) c[j] = v;
    }
    return out;
}

TargetSet TargetSet::of(std::vector<CopConfig> configs) {
    TargetSet t;
    for (auto& c : configs) std::sort(c.begin(), c.end());
    std::sort(configs.begin(), configs.end());
    configs.erase(std::unique(configs.begin(), configs.end()), configs.end());
    t.configs_ = std::move(configs);
    return t;
}

CaptureOutcome bounded_capture(const Graph& g, const CopConfig& start, int robber, int t,
                               const TargetSet& target, const EngineOptions& opts,
                               SolveStats* stats) {
    check_engine_graph(g);
    check_time(t);
    CopConfig canon = canonical_config(start, g.vertex_count());
    Arena arena(g, static_cast<int>(canon.size()), opts);
    if (stats) stats->configs_enumerated += static_cast<long long>(arena.configs.size());
    int startId = arena.id_of(canon);
    if (robber < 0 || robber >= g.vertex_count())
        throw std::invalid_argument("bounded_capture: robber vertex out of range");
    if (arena.occupied(startId, robber))
        throw std::invalid_argument("bounded_capture: robber placed on a cop");
    std::vector<char> mask = target_mask(arena, target);
    Tables tb = solve_bounded_tables(arena, mask, t, opts, stats);

    CaptureOutcome outcome;
    outcome.win = tb.cop_win(t, startId, robber);
    if (!outcome.win) return outcome;

    // Walk the canonical strategy against every robber line and collect the
    // capture-moment configurations.
    std::vector<int> captures;
    std::vector<std::tuple<int, int, int>> queue{{startId, robber, t}};
    std::vector<char> seen(arena.configs.size() * g.vertex_count() * (t + 1), 0);
    auto stateIndex = [&](int id, int r, int s) {
        return (static_cast<std::size_t>(id) * g.vertex_count() + r) * (t + 1) + s;
    };
    seen[stateIndex(startId, robber, t)] = 1;
    while (!queue.empty()) {
        auto [id, r, s] = queue.back();
        queue.pop_back();
        int move = certified_move(arena, tb, mask, id, r, s);
        assert(move >= 0);
        if (arena.occupied(move, r)) {
            captures.push_back(move);
            continue;
        }
        for (int next : g.closed_neighborhood(r)) {
            if (arena.occupied(move, next)) {
                captures.push_back(move);  // robber may end the play himself
            } else if (s >= 2) {
                std::size_t idx = stateIndex(move, next, s - 1);
                if (!seen[idx]) {
                    seen[idx] = 1;
                    queue.emplace_back(move, next, s - 1);
                }
            }
        }
    }
    std::sort(captures.begin(), captures.end());
    captures.erase(std::unique(captures.begin(), captures.end()), captures.end());
    for (int id : captures) outcome.capture_configs.push_back(arena.configs[id]);
    return outcome;
}

SinglePlayResult single_play_value(const Graph& g, int k, int t, const EngineOptions& opts,
                                   SolveStats* stats) {
    check_engine_graph(g);
    check_time(t);
    Arena arena(g, k, opts);
    if (stats) stats->configs_enumerated += static_cast<long long>(arena.configs.size());
    std::vector<char> all(arena.configs.size(), 1);
    Tables tb = solve_bounded_tables(arena, all, t, opts, stats);
    for (std::size_t id = 0; id < arena.configs.size(); ++id)
        if (covers_all_placements(arena, tb, t, static_cast<int>(id)))
            return {true, arena.configs[id]};
    return {false, std::nullopt};
}

int min_cops_single_play(const Graph& g, int t, const EngineOptions& opts, SolveStats* stats) {
    check_engine_graph(g);
    check_time(t);
    for (int k = 1; k <= g.vertex_count(); ++k)
        if (single_play_value(g, k, t, opts, stats).value) return k;
    // k = n places a cop on every vertex, so the loop always returns.
    throw std::logic_error("min_cops_single_play: unreachable");
}

std::optional<int> capture_time(const Graph& g, int k, const EngineOptions& opts,
                                SolveStats* stats) {
    check_engine_graph(g);
    Arena arena(g, k, opts);
    if (stats) stats->configs_enumerated += static_cast<long long>(arena.configs.size());
    StabilizedResult res = solve_until_stable(arena, opts, stats);
    if (res.first_cover_steps < 0) return std::nullopt;
    // Rounds are counted including the initial placement round, so a
    // capture after s cop moves is reported as s + 1.
    return res.first_cover_steps + 1;
}

std::vector<CopConfig> eternal_win_set(const Graph& g, int k, int t, const EngineOptions& opts,
                                       SolveStats* stats) {
    check_engine_graph(g);
    check_time(t);
    Arena arena(g, k, opts);
    if (stats) stats->configs_enumerated += static_cast<long long>(arena.configs.size());
    std::vector<char> mask = eternal_fixpoint(arena, t, opts, stats, nullptr);
    std::vector<CopConfig> out;
    for (std::size_t id = 0; id < arena.configs.size(); ++id)
        if (mask[id]) out.push_back(arena.configs[id]);
    return out;
}

int cop_number(const Graph& g, const EngineOptions& opts, SolveStats* stats) {
    check_engine_graph(g);
    for (int k = 1; k <= g.vertex_count(); ++k)
        if (capture_time(g, k, opts, stats).has_value()) return k;
    throw std::logic_error("cop_number: unreachable");
}

StrategyTable extract_strategy(const Graph& g, int k, int t, const EngineOptions& opts) {
    check_engine_graph(g);
    check_time(t);
    Arena arena(g, k, opts);
    std::vector<char> mask = eternal_fixpoint(arena, t, opts, nullptr, nullptr);
    if (least_member(mask) < 0)
        throw std::invalid_argument("extract_strategy: no eternal win set for these parameters");
    return extract_table(arena, mask, t, /*certified=*/true, /*seedAllConfigs=*/false, opts,
                         nullptr);
}

StrategyTable extract_strategy_against(const Graph& g, int k, int t,
                                       const std::vector<CopConfig>& target,
                                       const EngineOptions& opts) {
    check_engine_graph(g);
    check_time(t);
    Arena arena(g, k, opts);
    std::vector<char> mask = target_mask(arena, TargetSet::of(target));
    if (least_member(mask) < 0)
        throw std::invalid_argument("extract_strategy_against: empty target set");
    return extract_table(arena, mask, t, /*certified=*/false, /*seedAllConfigs=*/true, opts,
                         nullptr);
}

SolveResult eternal_cop_number(const Graph& g, int t, const EngineOptions& opts) {
    check_engine_graph(g);
    check_time(t);
    SolveResult result;
    for (int k = 1; k <= g.vertex_count(); ++k) {
        Arena arena(g, k, opts);
        result.stats.configs_enumerated += static_cast<long long>(arena.configs.size());
        std::vector<char> mask = eternal_fixpoint(arena, t, opts, &result.stats, nullptr);
        if (least_member(mask) >= 0) {
            result.value = k;
            result.certificate = extract_table(arena, mask, t, /*certified=*/true,
                                               /*seedAllConfigs=*/false, opts, &result.stats);
            return result;
        }
    }
    throw std::logic_error("eternal_cop_number: unreachable, n cops always win");
}

// ---------------------------------------------------------------------------
// Replay and interactive play.

namespace {

struct TableDriver {
    const Graph& g;
    const StrategyTable& table;

    const CopConfig& move_for(const CopConfig& config, int robber, int stepsLeft) const {
        auto it = table.moves.find({config, robber, stepsLeft});
        if (it == table.moves.end())
            throw std::logic_error(
                "strategy table is missing a reachable state; the table was not "
                "certified for this graph");
        return it->second;
    }
};

bool config_occupies(const CopConfig& c, int v) {
    return std::binary_search(c.begin(), c.end(), v);
}

}  // namespace

ReplayResult replay(const Graph& g, const StrategyTable& table,
                    const std::vector<RobberPlay>& script) {
    if (table.graph_hash != g.hash())
        throw std::invalid_argument("replay: strategy table was built for a different graph");
    TableDriver driver{g, table};
    ReplayResult result;
    CopConfig config = table.start;
    for (const RobberPlay& play : script) {
        PlayTranscript transcript;
        transcript.placement = play.placement;
        if (play.placement < 0 || play.placement >= g.vertex_count() ||
            config_occupies(config, play.placement)) {
            transcript.outcome = PlayOutcome::InputRejected;
            transcript.diagnostic = "illegal placement " + std::to_string(play.placement) +
                                    ": vertex missing or already occupied";
            result.plays.push_back(std::move(transcript));
            result.all_captured = false;
            return result;
        }
        int robber = play.placement;
        int stepsLeft = table.t;
        std::size_t moveIdx = 0;
        bool done = false;
        while (!done) {
            const CopConfig& next = driver.move_for(config, robber, stepsLeft);
            config = next;
            transcript.trace.emplace_back(config, robber);
            if (config_occupies(config, robber)) {
                transcript.outcome = PlayOutcome::Captured;
                transcript.capture_step = table.t - stepsLeft + 1;
                break;
            }
            int reply = robber;  // a missing scripted move is a pass
            if (moveIdx < play.moves.size()) reply = play.moves[moveIdx++];
            if (reply < 0 || reply >= g.vertex_count() ||
                (reply != robber && !g.adjacent(robber, reply))) {
                transcript.outcome = PlayOutcome::InputRejected;
                transcript.diagnostic = "illegal robber move to " + std::to_string(reply);
                result.plays.push_back(std::move(transcript));
                result.all_captured = false;
                return result;
            }
            robber = reply;
            transcript.trace.emplace_back(config, robber);
            if (config_occupies(config, robber)) {
                transcript.outcome = PlayOutcome::Captured;
                transcript.capture_step = table.t - stepsLeft + 1;
                break;
            }
            if (--stepsLeft == 0) {
                transcript.outcome = PlayOutcome::Survived;
                done = true;
            }
        }
        transcript.end_config = config;
        bool survived = transcript.outcome == PlayOutcome::Survived;
        result.plays.push_back(std::move(transcript));
        if (survived) {
            result.all_captured = false;
            return result;
        }
    }
    result.all_captured = true;
    return result;
}

PlaySession::PlaySession(const Graph& g, const StrategyTable& table)
    : g_(g), table_(table), config_(table.start) {
    if (table.graph_hash != g.hash())
        throw std::invalid_argument("play: strategy table was built for a different graph");
}

std::string PlaySession::run_cop_turn(bool* captured) {
    auto it = table_.moves.find({config_, robber_, steps_left_});
    if (it == table_.moves.end())
        throw std::logic_error("play: strategy table is missing a reachable state");
    config_ = it->second;
    std::ostringstream msg;
    msg << "cops move to [";
    for (std::size_t i = 0; i < config_.size(); ++i)
        msg << (i ? " " : "") << config_[i];
    msg << "]";
    if (config_occupies(config_, robber_)) {
        *captured = true;
        ++plays_completed_;
        phase_ = Phase::AwaitingPlacement;
        msg << "; captured";
    } else {
        *captured = false;
        phase_ = Phase::AwaitingRobberMove;
    }
    return msg.str();
}

std::string PlaySession::place_robber(int v, bool* captured) {
    *captured = false;
    if (phase_ != Phase::AwaitingPlacement) return "error: expected a robber move, not a placement";
    if (v < 0 || v >= g_.vertex_count()) return "error: vertex out of range";
    if (config_occupies(config_, v)) return "error: vertex " + std::to_string(v) + " is occupied";
    robber_ = v;
    steps_left_ = table_.t;
    return run_cop_turn(captured);
}

std::string PlaySession::move_robber(int v, bool* captured) {
    *captured = false;
    if (phase_ != Phase::AwaitingRobberMove) return "error: expected a placement first";
    if (v < 0 || v >= g_.vertex_count()) return "error: vertex out of range";
    if (v != robber_ && !g_.adjacent(robber_, v))
        return "error: " + std::to_string(v) + " is not within one step of the robber";
    robber_ = v;
    if (config_occupies(config_, robber_)) {
        *captured = true;
        ++plays_completed_;
        phase_ = Phase::AwaitingPlacement;
        return "robber stepped onto a cop; captured";
    }
    if (--steps_left_ == 0) {
        phase_ = Phase::Done;
        return "robber survived the time budget; the table failed";
    }
    bool copCaptured = false;
    std::string msg = run_cop_turn(&copCaptured);
    *captured = copCaptured;
    return msg;
}

// ---------------------------------------------------------------------------
// Adversary oracle.

AdversaryOracle::AdversaryOracle(const Graph& g, int k, int t, const EngineOptions& opts)
    : g_(g), k_(k), t_(t), opts_(opts) {
    check_engine_graph(g);
    check_time(t);
    Arena arena(g, k, opts);
    configs_ = arena.configs;
    eternal_fixpoint(arena, t, opts, nullptr, &rounds_);
}

int AdversaryOracle::drop_round(int id) const {
    for (std::size_t j = 1; j < rounds_.size(); ++j)
        if (!rounds_[j][id]) return static_cast<int>(j);
    return -1;  // survives every round
}

bool AdversaryOracle::eternally_winning(const CopConfig& config) const {
    CopConfig canon = canonical_config(config, g_.vertex_count());
    auto it = std::lower_bound(configs_.begin(), configs_.end(), canon);
    if (it == configs_.end() || *it != canon)
        throw std::invalid_argument("adversary: configuration has the wrong cop count");
    return drop_round(static_cast<int>(it - configs_.begin())) < 0;
}

ReplayResult AdversaryOracle::demonstrate(const StrategyTable& copTable, const CopConfig& start,
                                          int maxPlays) const {
    if (copTable.graph_hash != g_.hash() || copTable.k != k_ || copTable.t != t_)
        throw std::invalid_argument("adversary: cop table does not match this oracle");
    Arena arena(g_, k_, opts_);
    TableDriver driver{g_, copTable};
    int n = g_.vertex_count();
    if (maxPlays <= 0) maxPlays = static_cast<int>(rounds_.size()) + 1;

    std::vector<std::unique_ptr<Tables>> cache(rounds_.size());
    auto tables_for = [&](int roundIdx) -> const Tables& {
        if (!cache[roundIdx])
            cache[roundIdx] = std::make_unique<Tables>(
                solve_bounded_tables(arena, rounds_[roundIdx], t_, opts_, nullptr));
        return *cache[roundIdx];
    };

    ReplayResult result;
    result.all_captured = true;
    int configId = arena.id_of(canonical_config(start, n));
    for (int playNo = 0; playNo < maxPlays; ++playNo) {
        int j = drop_round(configId);
        if (j < 0) return result;  // configuration is genuinely winning; give up
        const std::vector<char>& target = rounds_[j - 1];
        const Tables& tb = tables_for(j - 1);

        int placement = -1;
        for (int r = 0; r < n && placement < 0; ++r)
            if (!arena.occupied(configId, r) && !tb.cop_win(t_, configId, r)) placement = r;
        assert(placement >= 0);

        PlayTranscript transcript;
        transcript.placement = placement;
        int robber = placement;
        int stepsLeft = t_;
        for (;;) {
            const CopConfig& moveConfig = driver.move_for(arena.configs[configId], robber, stepsLeft);
            int move = arena.id_of(moveConfig);
            configId = move;
            transcript.trace.emplace_back(moveConfig, robber);
            if (arena.occupied(move, robber)) {
                transcript.outcome = PlayOutcome::Captured;
                transcript.capture_step = t_ - stepsLeft + 1;
                break;
            }
            // Pick a reply that keeps the cops losing against this round's
            // target: a suicide ending outside the target, or a safe step.
            int reply = -1;
            for (int next : g_.closed_neighborhood(robber)) {
                if (arena.occupied(move, next)) {
                    if (!target[move]) { reply = next; break; }
                } else if (stepsLeft == 1 || !tb.cop_win(stepsLeft - 1, move, next)) {
                    reply = next;
                    break;
                }
            }
            assert(reply >= 0);
            robber = reply;
            transcript.trace.emplace_back(moveConfig, robber);
            if (arena.occupied(move, robber)) {
                transcript.outcome = PlayOutcome::Captured;
                transcript.capture_step = t_ - stepsLeft + 1;
                break;
            }
            if (--stepsLeft == 0) {
                transcript.outcome = PlayOutcome::Survived;
                break;
            }
        }
        transcript.end_config = arena.configs[configId];
        bool survived = transcript.outcome == PlayOutcome::Survived;
        result.plays.push_back(std::move(transcript));
        if (survived) {
            result.all_captured = false;
            return result;
        }
    }
    return result;
}

}  // namespace pursuit
