#include "pursuit/bounds.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace pursuit {

namespace {

long long ceil_div(long long a, long long b) {
    // b > 0 and a >= 0 wherever this is used.
    return (a + b - 1) / b;
}

void check_tree(const Graph& g, const char* who) {
    if (!g.connected() || g.edge_count() != g.vertex_count() - 1)
        throw std::invalid_argument(std::string(who) + ": input is not a tree");
}

}  // namespace

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::Exact: return "exact";
        case BoundKind::Upper: return "upper";
        case BoundKind::Lower: return "lower";
    }
    return "?";
}

Rational Rational::of(long long num, long long den) {
    if (den <= 0) throw std::invalid_argument("Rational: denominator must be positive");
    long long g = std::gcd(num, den);
    if (g == 0) g = 1;
    return Rational{num / g, den / g};
}

long long Rational::ceil() const { return ceil_div(num, den); }

int ell(int level, int t) {
    if (level < 1 || t < 1) throw std::invalid_argument("ell: need level >= 1 and t >= 1");
    // ceil((1 - 2^-i) t - 1/2) = ceil((2pt - 2t - p) / 2p) with p = 2^i.
    // Once p exceeds 2t the value saturates at t.
    if (level >= 62 || (1ll << level) > 2ll * t) return t;
    long long p = 1ll << level;
    return static_cast<int>(ceil_div(2 * p * t - 2 * t - p, 2 * p));
}

int maxseq(int t) {
    if (t < 1) throw std::invalid_argument("maxseq: t must be positive");
    return std::bit_width(static_cast<unsigned long long>(t));
}

namespace {

// Appending x to a sequence with headroom `slack` (the least amount any
// prefix can still absorb) leaves headroom min(x, slack - x).
void maxseq_dfs(int slack, std::vector<int>& current, std::vector<int>& best) {
    if (current.size() > best.size()) best = current;
    for (int x = slack - 1; x >= 1; --x) {
        current.push_back(x);
        maxseq_dfs(std::min(x, slack - x), current, best);
        current.pop_back();
    }
}

}  // namespace

int maxseq_oracle(int t, std::vector<int>* witness) {
    if (t < 1) throw std::invalid_argument("maxseq_oracle: t must be positive");
    if (t > 4096) throw std::invalid_argument("maxseq_oracle: search limit is t <= 4096");
    std::vector<int> current{t}, best{t};
    maxseq_dfs(t, current, best);
    if (witness) *witness = best;
    return static_cast<int>(best.size());
}

bool is_sum_decreasing(const std::vector<int>& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] < 1) return false;
        long long tail = 0;
        for (std::size_t j = i + 1; j < seq.size(); ++j) tail += seq[j];
        if (tail >= seq[i]) return false;
    }
    return true;
}

int path_value(int n, int t) {
    if (n < 1 || t < 1) throw std::invalid_argument("path_value: need n >= 1 and t >= 1");
    return static_cast<int>(ceil_div(n, t + 1));
}

int cycle_value(int n, int t) {
    if (n < 3 || t < 1) throw std::invalid_argument("cycle_value: need n >= 3 and t >= 1");
    if (n == 3) return 1;  // the 3-clique; the cycle theorems start at n = 4
    if (n <= 6) return 2;
    if (t >= ceil_div(n, 2) - 2) return 2;
    return static_cast<int>(ceil_div(n - 3, 2 * t + 1)) + 1;
}

BoundReport retract_sum_bound(const std::vector<int>& part_values) {
    if (part_values.empty())
        throw std::invalid_argument("retract_sum_bound: needs at least one part");
    long long sum = 0;
    for (int v : part_values) {
        if (v < 1) throw std::invalid_argument("retract_sum_bound: part values must be >= 1");
        sum += v;
    }
    BoundReport r;
    r.name = "retract-sum";
    r.kind = BoundKind::Upper;
    r.value = sum;
    r.certificate = {{"part_values", part_values}};
    return r;
}

namespace {

/// k cops capture within `steps` time-steps; steps < 1 degenerates to the
/// cops covering every vertex outright.
bool clearable_within(const Graph& g, int k, int steps, const EngineOptions& opts) {
    if (steps < 1) return k >= g.vertex_count();
    return single_play_value(g, k, steps, opts).value;
}

}  // namespace

BoundReport recurrent_attack_bound(const Graph& g, int t, int level, int k,
                                   const EngineOptions& opts) {
    if (level < 1 || k < 1) throw std::invalid_argument("recurrent_attack_bound: need i, k >= 1");
    int budget = ell(level, t);
    if (!clearable_within(g, k, budget, opts))
        throw std::invalid_argument("recurrent_attack_bound: " + std::to_string(k) +
                                    " cops cannot clear the graph within ell(" +
                                    std::to_string(level) + "," + std::to_string(t) + ") = " +
                                    std::to_string(budget) + " steps");
    BoundReport r;
    r.name = "recurrent-attack";
    r.kind = BoundKind::Upper;
    r.value = static_cast<long long>(level) * k;
    r.certificate = {{"i", level}, {"k", k}, {"ell", budget}, {"t", t}};
    return r;
}

DecompositionPart make_part(const Graph& g, std::vector<int> vertices, int level, int cops) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    DecompositionPart part;
    part.level = level;
    part.cops = cops;
    part.retraction.source = g;
    part.retraction.target = vertices;
    part.retraction.map.resize(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) {
        int best = -1, bestDist = Graph::kUnreachable;
        for (int u : vertices) {
            int d = g.distance(v, u);
            if (d < bestDist) {
                bestDist = d;
                best = u;
            }
        }
        part.retraction.map[v] = best;
    }
    part.vertices = std::move(vertices);
    return part;
}

std::pair<int, int> minimal_parameters(const Graph& g, int t, const EngineOptions& opts) {
    if (t < 1) throw std::invalid_argument("minimal_parameters: t must be positive");
    int levelCap = 1;
    while (ell(levelCap, t) < t) ++levelCap;
    std::vector<std::pair<int, int>> candidates;
    for (int i = 1; i <= levelCap; ++i)
        for (int k = 1; k <= g.vertex_count(); ++k) candidates.emplace_back(i, k);
    std::sort(candidates.begin(), candidates.end(), [](auto a, auto b) {
        long long pa = static_cast<long long>(a.first) * a.second;
        long long pb = static_cast<long long>(b.first) * b.second;
        return pa != pb ? pa < pb : a.first < b.first;
    });
    std::map<std::pair<int, int>, bool> memo;  // keyed by (ell, k)
    for (auto [i, k] : candidates) {
        auto key = std::make_pair(ell(i, t), k);
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, clearable_within(g, k, key.first, opts)).first;
        if (it->second) return {i, k};
    }
    throw std::logic_error("minimal_parameters: unreachable, k = n always clears");
}

Decomposition decompose(const Graph& g, const std::vector<std::vector<int>>& parts, int t,
                        const EngineOptions& opts) {
    Decomposition d;
    for (const auto& vertices : parts) {
        auto sub = induced_subgraph(g, vertices);
        auto [i, k] = minimal_parameters(sub.graph, t, opts);
        d.parts.push_back(make_part(g, vertices, i, k));
    }
    return d;
}

void validate_decomposition(const Graph& g, const Decomposition& d, int t,
                            const EngineOptions& opts) {
    if (d.parts.empty()) throw std::invalid_argument("decomposition: no parts");
    std::vector<int> owner(g.vertex_count(), -1);
    for (std::size_t p = 0; p < d.parts.size(); ++p) {
        const auto& part = d.parts[p];
        std::string tag = "decomposition part " + std::to_string(p);
        if (part.vertices.empty()) throw std::invalid_argument(tag + ": empty");
        for (int v : part.vertices) {
            if (v < 0 || v >= g.vertex_count())
                throw std::invalid_argument(tag + ": vertex out of range");
            if (owner[v] != -1)
                throw std::invalid_argument(tag + ": overlaps part " + std::to_string(owner[v]) +
                                            " at vertex " + std::to_string(v));
            owner[v] = static_cast<int>(p);
        }
        auto sub = induced_subgraph(g, part.vertices);
        if (!sub.graph.connected()) throw std::invalid_argument(tag + ": not connected");
        if (part.retraction.target != part.vertices)
            throw std::invalid_argument(tag + ": retraction target differs from the part");
        if (!(part.retraction.source == g))
            throw std::invalid_argument(tag + ": retraction source differs from the graph");
        RetractionCheck check = verify_retraction(part.retraction);
        if (!check) throw std::invalid_argument(tag + ": retraction invalid, " + check.detail);
        if (part.level < 1 || part.cops < 1)
            throw std::invalid_argument(tag + ": parameters must be >= 1");
        if (!clearable_within(sub.graph, part.cops, ell(part.level, t), opts))
            throw std::invalid_argument(tag + ": not in G_i^k for (i,k) = (" +
                                        std::to_string(part.level) + "," +
                                        std::to_string(part.cops) + ")");
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (owner[v] < 0)
            throw std::invalid_argument("decomposition: vertex " + std::to_string(v) +
                                        " is uncovered");
}

BoundReport retract_parameter_bound(const Graph& g, const Decomposition& d, int t,
                                    const EngineOptions& opts) {
    validate_decomposition(g, d, t, opts);
    long long sum = 0;
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& part : d.parts) {
        sum += static_cast<long long>(part.level) * part.cops;
        parts.push_back({{"vertices", part.vertices}, {"i", part.level}, {"k", part.cops}});
    }
    BoundReport r;
    r.name = "retract-parameter";
    r.kind = BoundKind::Upper;
    r.value = sum;
    r.certificate = {{"t", t}, {"parts", parts}};
    return r;
}

// ---------------------------------------------------------------------------
// Tree decomposition search.

namespace {

using Mask = std::uint64_t;

struct Ball {
    Mask mask = 0;
    int weight = 0;
    int pop = 0;
};

int mask_radius(const Graph& g, Mask mask) {
    // Connected subtrees are isometric, so the whole-tree metric applies.
    int best = Graph::kUnreachable;
    for (int u = 0; u < g.vertex_count(); ++u) {
        if (!((mask >> u) & 1)) continue;
        int ecc = 0;
        for (int w = 0; w < g.vertex_count(); ++w)
            if ((mask >> w) & 1) ecc = std::max(ecc, g.distance(u, w));
        best = std::min(best, ecc);
    }
    return best;
}

int level_for_radius(int radius, int t) {
    for (int i = 1;; ++i)
        if (ell(i, t) >= radius) return i;
}

bool mask_connected(const Graph& g, Mask mask) {
    if (mask == 0) return false;
    int start = std::countr_zero(mask);
    Mask seen = 1ull << start;
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.neighbors(u)) {
            Mask bit = 1ull << v;
            if ((mask & bit) && !(seen & bit)) {
                seen |= bit;
                stack.push_back(v);
            }
        }
    }
    return seen == mask;
}

struct CoverSearch {
    const Graph& g;
    std::vector<Ball> balls;
    std::vector<std::vector<int>> ballsAt;  // vertex -> candidate ball indices
    Mask full;
    int maxPop = 1;
    int best;
    std::vector<int> bestPick, pick;

    CoverSearch(const Graph& graph, int t) : g(graph) {
        int n = g.vertex_count();
        full = (n == 64) ? ~0ull : ((1ull << n) - 1);
        std::map<Mask, int> seen;  // mask -> weight
        for (int v = 0; v < n; ++v)
            for (int r = 0; r <= t; ++r) {
                Mask mask = 0;
                for (int u = 0; u < n; ++u)
                    if (g.distance(v, u) <= r) mask |= 1ull << u;
                int weight = level_for_radius(mask_radius(g, mask), t);
                auto it = seen.find(mask);
                if (it == seen.end() || it->second > weight) seen[mask] = weight;
            }
        for (auto& [mask, weight] : seen) {
            balls.push_back({mask, weight, std::popcount(mask)});
            maxPop = std::max(maxPop, balls.back().pop);
        }
        ballsAt.resize(n);
        for (std::size_t b = 0; b < balls.size(); ++b)
            for (int v = 0; v < n; ++v)
                if ((balls[b].mask >> v) & 1) ballsAt[v].push_back(static_cast<int>(b));
        for (int v = 0; v < n; ++v)
            std::sort(ballsAt[v].begin(), ballsAt[v].end(), [&](int a, int b) {
                if (balls[a].weight != balls[b].weight) return balls[a].weight < balls[b].weight;
                if (balls[a].pop != balls[b].pop) return balls[a].pop > balls[b].pop;
                return a < b;
            });
        best = greedy_weight() + 1;
    }

    int greedy_weight() {
        Mask uncovered = full;
        int total = 0;
        while (uncovered) {
            int bestBall = -1;
            double bestScore = -1;
            for (std::size_t b = 0; b < balls.size(); ++b) {
                int gain = std::popcount(balls[b].mask & uncovered);
                if (gain == 0) continue;
                double score = static_cast<double>(gain) / balls[b].weight;
                if (score > bestScore) {
                    bestScore = score;
                    bestBall = static_cast<int>(b);
                }
            }
            uncovered &= ~balls[bestBall].mask;
            total += balls[bestBall].weight;
        }
        return total;
    }

    void dfs(Mask uncovered, int weight) {
        if (weight >= best) return;
        if (!uncovered) {
            best = weight;
            bestPick = pick;
            return;
        }
        if (weight + ceil_div(std::popcount(uncovered), maxPop) >= best) return;
        int v = std::countr_zero(uncovered);
        for (int b : ballsAt[v]) {
            pick.push_back(b);
            dfs(uncovered & ~balls[b].mask, weight + balls[b].weight);
            pick.pop_back();
        }
    }
};

struct RepairFailure : std::logic_error {
    using std::logic_error::logic_error;
};

/// Turns a cover by subtrees into a partition without raising any part's
/// radius: drop contained parts, otherwise replace one side of an
/// intersecting pair by its (connected) difference.
std::vector<Mask> repair_cover(const Graph& g, std::vector<Mask> parts) {
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < parts.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < parts.size() && !changed; ++j) {
                Mask a = parts[i], b = parts[j];
                if (!(a & b)) continue;
                changed = true;
                if ((a & ~b) == 0) {
                    parts.erase(parts.begin() + static_cast<long>(i));
                } else if ((b & ~a) == 0) {
                    parts.erase(parts.begin() + static_cast<long>(j));
                } else if (mask_connected(g, a & ~b)) {
                    parts[i] = a & ~b;
                } else if (mask_connected(g, b & ~a)) {
                    parts[j] = b & ~a;
                } else {
                    throw RepairFailure("tree cover repair hit a doubly-forked pair");
                }
            }
    }
    return parts;
}

TreeBoundResult assemble_tree_bound(const Graph& g, int t, const std::vector<Mask>& parts,
                                    bool optimal, const EngineOptions& opts) {
    TreeBoundResult result;
    result.optimal = optimal;
    long long sum = 0;
    nlohmann::json certParts = nlohmann::json::array();
    for (Mask mask : parts) {
        std::vector<int> vertices;
        for (int v = 0; v < g.vertex_count(); ++v)
            if ((mask >> v) & 1) vertices.push_back(v);
        int level = level_for_radius(mask_radius(g, mask), t);
        result.decomposition.parts.push_back(make_part(g, vertices, level, 1));
        sum += level;
        certParts.push_back({{"vertices", vertices}, {"i", level}});
    }
    validate_decomposition(g, result.decomposition, t, opts);
    result.report.name = "tree-decomposition";
    result.report.kind = BoundKind::Upper;
    result.report.value = sum;
    result.report.certificate = {{"t", t}, {"optimal", optimal}, {"parts", certParts}};
    return result;
}

std::vector<Mask> greedy_ball_cover(const Graph& g, int radius) {
    int n = g.vertex_count();
    Mask full = (n == 64) ? ~0ull : ((1ull << n) - 1);
    Mask uncovered = full;
    std::vector<Mask> cover;
    while (uncovered) {
        Mask bestMask = 0;
        int bestGain = -1;
        for (int v = 0; v < n; ++v) {
            Mask mask = 0;
            for (int u = 0; u < n; ++u)
                if (g.distance(v, u) <= radius) mask |= 1ull << u;
            int gain = std::popcount(mask & uncovered);
            if (gain > bestGain) {
                bestGain = gain;
                bestMask = mask;
            }
        }
        cover.push_back(bestMask);
        uncovered &= ~bestMask;
    }
    return cover;
}

}  // namespace

TreeBoundResult tree_bound(const Graph& tree, int t, const EngineOptions& opts) {
    check_tree(tree, "tree_bound");
    if (t < 1) throw std::invalid_argument("tree_bound: t must be positive");
    if (tree.vertex_count() > 64)
        throw BudgetExceeded("tree_bound: trees above 64 vertices are out of budget");

    if (tree.vertex_count() <= 25) {
        CoverSearch search(tree, t);
        search.dfs(search.full, 0);
        std::vector<Mask> cover;
        for (int b : search.bestPick) cover.push_back(search.balls[b].mask);
        try {
            return assemble_tree_bound(tree, t, repair_cover(tree, cover), true, opts);
        } catch (const RepairFailure&) {
            // fall through to the greedy cover below
        }
    }
    std::vector<Mask> cover = greedy_ball_cover(tree, std::max(0, ell(1, t)));
    return assemble_tree_bound(tree, t, repair_cover(tree, cover), false, opts);
}

BoundReport tree_lower_bound(const Graph& tree, int t) {
    check_tree(tree, "tree_lower_bound");
    if (t < 1) throw std::invalid_argument("tree_lower_bound: t must be positive");
    int n = tree.vertex_count();
    int diameter = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) diameter = std::max(diameter, tree.distance(u, v));

    // Find `count` vertices pairwise at distance >= minDist, smallest ids
    // first.
    auto scattered = [&](int count, int minDist, auto&& self, std::vector<int>& chosen,
                         int from) -> bool {
        if (static_cast<int>(chosen.size()) == count) return true;
        for (int v = from; v < n; ++v) {
            bool fits = true;
            for (int u : chosen)
                if (tree.distance(u, v) < minDist) {
                    fits = false;
                    break;
                }
            if (!fits) continue;
            chosen.push_back(v);
            if (self(count, minDist, self, chosen, v + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };

    int bestLevel = 0;
    std::vector<int> witness;
    for (int i = 1; i <= n; ++i) {
        // Smallest admissible integer ell: ceil((t+1)(1 - 2^-i)), which
        // saturates at t+1 once 2^i exceeds t+1.
        long long need;
        if (i >= 62 || (1ll << i) > t + 1) {
            need = t + 1;
        } else {
            long long p = 1ll << i;
            need = ceil_div(static_cast<long long>(t + 1) * (p - 1), p);
        }
        if (2 * need > diameter) break;
        std::vector<int> chosen;
        if (!scattered(i + 1, static_cast<int>(2 * need), scattered, chosen, 0)) break;
        bestLevel = i;
        witness = chosen;
    }

    BoundReport r;
    r.name = "tree-scattered";
    r.kind = BoundKind::Lower;
    r.value = bestLevel + 1;
    r.certificate = {{"t", t}, {"i", bestLevel}, {"witness", witness}};
    return r;
}

GridBounds strong_grid_bounds(const std::vector<int>& dims, int t) {
    if (dims.empty()) throw std::invalid_argument("strong_grid_bounds: no dimensions");
    if (t < 1) throw std::invalid_argument("strong_grid_bounds: t must be positive");
    long long num = 1, den = 1, upper = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("strong_grid_bounds: dimensions must be >= 1");
        num *= d;
        den *= 2ll * t + 1;
        upper *= ceil_div(d, t + 1);
    }
    GridBounds out;
    out.lower.name = "strong-grid-lower";
    out.lower.kind = BoundKind::Lower;
    out.lower.rational = Rational::of(num, den);
    out.lower.value = out.lower.rational->ceil();
    out.lower.certificate = {{"dims", dims}, {"t", t}};
    out.upper.name = "strong-grid-upper";
    out.upper.kind = BoundKind::Upper;
    out.upper.value = upper;
    out.upper.certificate = {{"dims", dims}, {"t", t}};
    return out;
}

BoundReport strong_product_value(int first_value, const std::vector<int>& other_values) {
    if (first_value < 1)
        throw std::invalid_argument("strong_product_value: first factor value must be >= 1");
    for (int v : other_values)
        if (v != 1)
            throw std::invalid_argument(
                "strong_product_value: every other factor must have eternal value 1");
    BoundReport r;
    r.name = "strong-product-exact";
    r.kind = BoundKind::Exact;
    r.value = first_value;
    r.certificate = {{"first_factor_value", first_value},
                     {"other_factor_values", other_values},
                     {"strategy", "shadow play on each factor"}};
    return r;
}

GridBounds cartesian_grid_bounds(int m, int n, int t) {
    if (m < 2 || n < 2) throw std::invalid_argument("cartesian_grid_bounds: need m, n >= 2");
    if (t < 1) throw std::invalid_argument("cartesian_grid_bounds: t must be positive");
    long long mn = static_cast<long long>(m) * n;
    long long ball = 2ll * t * (t + 1) + 1;  // 1 + 4 + 8 + ... + 4t
    GridBounds out;
    out.lower.name = "cartesian-grid-lower";
    out.lower.kind = BoundKind::Lower;
    out.lower.rational = Rational::of(mn, ball);
    out.lower.value = out.lower.rational->ceil();
    out.lower.certificate = {{"m", m}, {"n", n}, {"t", t}, {"ball_size", ball}};
    out.upper.name = "cartesian-grid-upper";
    out.upper.kind = BoundKind::Upper;
    out.upper.rational = Rational::of(64 * mn, 9ll * t * t + 12 * t + 4);
    out.upper.value = out.upper.rational->ceil();
    out.upper.certificate = {{"m", m}, {"n", n}, {"t", t}};
    return out;
}

bool distance_dominates(const Graph& g, const std::vector<int>& s, int t) {
    if (s.empty()) throw std::invalid_argument("distance_dominates: empty set");
    for (int v = 0; v < g.vertex_count(); ++v) {
        bool covered = false;
        for (int u : s)
            if (g.distance(v, u) <= t) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

int min_distance_dominating_set(const Graph& g, int t) {
    int n = g.vertex_count();
    if (n > 24) throw BudgetExceeded("min_distance_dominating_set: more than 24 vertices");
    std::vector<unsigned> balls(n, 0);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (g.distance(v, u) <= t) balls[v] |= 1u << u;
    unsigned full = (1u << n) - 1;
    for (int size = 1; size <= n; ++size) {
        std::vector<int> combo(size);
        for (int i = 0; i < size; ++i) combo[i] = i;
        for (;;) {
            unsigned covered = 0;
            for (int v : combo) covered |= balls[v];
            if (covered == full) return size;
            int i = size - 1;
            while (i >= 0 && combo[i] == n - size + i) --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < size; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    return n;
}

BoundReport distance_domination_bound(const Graph& g, int t) {
    BoundReport r;
    r.name = "distance-domination";
    r.kind = BoundKind::Lower;
    r.value = min_distance_dominating_set(g, t);
    r.certificate = {{"t", t}};
    return r;
}

}  // namespace pursuit
