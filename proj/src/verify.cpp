#include "pursuit/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pursuit/atlas.hpp"
#include "pursuit/bounds.hpp"

namespace pursuit {

namespace {

CheckRecord record(std::string suite, std::string instance, long long expected,
                   long long actual) {
    CheckRecord r;
    r.suite = std::move(suite);
    r.instance = std::move(instance);
    r.expected = std::to_string(expected);
    r.actual = std::to_string(actual);
    r.ok = expected == actual;
    return r;
}

CheckRecord record_le(std::string suite, std::string instance, long long lo, long long hi) {
    CheckRecord r;
    r.suite = std::move(suite);
    r.instance = std::move(instance);
    r.expected = "<= " + std::to_string(hi);
    r.actual = std::to_string(lo);
    r.ok = lo <= hi;
    return r;
}

}  // namespace

std::vector<CheckRecord> verify_paths(int maxN, int maxT, const EngineOptions& opts) {
    std::vector<CheckRecord> out;
    for (int n = 1; n <= maxN; ++n)
        for (int t = 1; t <= maxT; ++t) {
            Graph g = generate("path:" + std::to_string(n));
            int exact = eternal_cop_number(g, t, opts).value;
            out.push_back(record("paths", "P_" + std::to_string(n) + " t=" + std::to_string(t),
                                 path_value(n, t), exact));
        }
    return out;
}

std::vector<CheckRecord> verify_cycles(int maxN, int maxT, const EngineOptions& opts) {
    std::vector<CheckRecord> out;
    for (int n = 3; n <= maxN; ++n)
        for (int t = 1; t <= maxT; ++t) {
            Graph g = generate("cycle:" + std::to_string(n));
            int exact = eternal_cop_number(g, t, opts).value;
            out.push_back(record("cycles", "C_" + std::to_string(n) + " t=" + std::to_string(t),
                                 cycle_value(n, t), exact));
        }
    return out;
}

std::vector<CheckRecord> verify_trees(int maxN, int maxT, const EngineOptions& opts) {
    std::vector<CheckRecord> out;
    for (int n = 1; n <= maxN; ++n) {
        auto trees = all_trees(n);
        for (std::size_t idx = 0; idx < trees.size(); ++idx)
            for (int t = 1; t <= maxT; ++t) {
                const Graph& tree = trees[idx];
                std::string name = "tree n=" + std::to_string(n) + " #" + std::to_string(idx) +
                                   " t=" + std::to_string(t);
                int exact = eternal_cop_number(tree, t, opts).value;
                auto upper = tree_bound(tree, t, opts);
                auto lower = tree_lower_bound(tree, t);
                out.push_back(record_le("trees", name + " exact<=upper", exact,
                                        upper.report.value));
                out.push_back(record_le("trees", name + " lower<=exact", lower.value, exact));
            }
    }
    return out;
}

std::vector<CheckRecord> verify_grids(int maxN, int maxT, const EngineOptions& opts) {
    std::vector<CheckRecord> out;
    // Capture time formula on tiny grids.
    for (int m = 2; m <= std::min(3, maxN); ++m)
        for (int n = 2; n <= std::min(3, maxN); ++n) {
            Graph g = generate("grid:" + std::to_string(m) + "x" + std::to_string(n));
            auto time = capture_time(g, 2, opts);
            out.push_back(record("grids",
                                 "capt_2(P_" + std::to_string(m) + " x P_" + std::to_string(n) + ")",
                                 (m + n) / 2, time ? *time : -1));
        }
    // Product distance laws against BFS on the product.
    std::vector<std::string> specs = {"path:2", "path:3", "path:4", "cycle:3", "cycle:4"};
    for (const auto& sa : specs)
        for (const auto& sb : specs) {
            Graph a = generate(sa), b = generate(sb);
            Graph strong = strong_product(a, b);
            Graph cart = cartesian_product(a, b);
            bool strongOk = true, cartOk = true;
            int hn = b.vertex_count();
            for (int u = 0; u < a.vertex_count(); ++u)
                for (int up = 0; up < hn; ++up)
                    for (int v = 0; v < a.vertex_count(); ++v)
                        for (int vp = 0; vp < hn; ++vp) {
                            int du = a.distance(u, v), dv = b.distance(up, vp);
                            if (strong.distance(u * hn + up, v * hn + vp) != std::max(du, dv))
                                strongOk = false;
                            if (cart.distance(u * hn + up, v * hn + vp) != du + dv)
                                cartOk = false;
                        }
            CheckRecord r1{"grids", sa + " boxtimes " + sb + " distance law", "max", "max",
                           strongOk};
            CheckRecord r2{"grids", sa + " box " + sb + " distance law", "sum", "sum", cartOk};
            out.push_back(r1);
            out.push_back(r2);
        }
    // Formula bounds bracket the exact value on the small grids.
    for (auto [m, n] : {std::pair{3, 3}, std::pair{3, 4}}) {
        for (int t = 1; t <= maxT; ++t) {
            Graph g = generate("grid:" + std::to_string(m) + "x" + std::to_string(n));
            int exact = eternal_cop_number(g, t, opts).value;
            GridBounds gb = cartesian_grid_bounds(m, n, t);
            std::string name = "P_" + std::to_string(m) + " x P_" + std::to_string(n) +
                               " t=" + std::to_string(t);
            out.push_back(record_le("grids", name + " lower<=exact", gb.lower.value, exact));
            CheckRecord up;
            up.suite = "grids";
            up.instance = name + " exact<=upper";
            up.expected = "<= " + std::to_string(gb.upper.rational->num) + "/" +
                          std::to_string(gb.upper.rational->den);
            up.actual = std::to_string(exact);
            up.ok = static_cast<long long>(exact) * gb.upper.rational->den <=
                    gb.upper.rational->num;
            out.push_back(up);
        }
    }
    return out;
}

std::vector<SetCoverInstance> tiny_set_cover_corpus(int maxAlpha, int maxBeta) {
    std::vector<SetCoverInstance> out;
    for (int alpha = 1; alpha <= maxAlpha; ++alpha) {
        // Nonempty subsets of {1..alpha}, as sorted id lists.
        std::vector<std::vector<int>> pool;
        for (unsigned mask = 1; mask < (1u << alpha); ++mask) {
            std::vector<int> subset;
            for (int b = 0; b < alpha; ++b)
                if ((mask >> b) & 1) subset.push_back(b + 1);
            pool.push_back(std::move(subset));
        }
        for (int beta = 1; beta <= maxBeta; ++beta) {
            // Multisets of `beta` subsets, up to reordering.
            std::vector<int> pick(beta, 0);
            std::set<std::vector<std::vector<int>>> seen;
            for (;;) {
                std::vector<std::vector<int>> subsets;
                for (int i : pick) subsets.push_back(pool[i]);
                std::vector<char> covered(alpha + 1, 0);
                for (const auto& s : subsets)
                    for (int b : s) covered[b] = 1;
                bool coversAll = true;
                for (int b = 1; b <= alpha; ++b)
                    if (!covered[b]) coversAll = false;
                if (coversAll) {
                    auto key = subsets;
                    std::sort(key.begin(), key.end());
                    if (seen.insert(key).second) {
                        SetCoverInstance inst;
                        inst.universe = alpha;
                        inst.subsets = subsets;
                        inst.k = 1;
                        out.push_back(std::move(inst));
                    }
                }
                int i = beta - 1;
                while (i >= 0 && pick[i] == static_cast<int>(pool.size()) - 1) --i;
                if (i < 0) break;
                int v = pick[i] + 1;
                for (int j = i; j < beta; ++j) pick[j] = v;
            }
        }
    }
    return out;
}

std::vector<CheckRecord> verify_reduction_suite(int maxT, const EngineOptions& opts) {
    std::vector<CheckRecord> out;
    auto corpus = tiny_set_cover_corpus(2, 2);
    for (const auto& inst : corpus)
        for (int t = 1; t <= std::min(2, maxT); ++t) {
            ReductionCheck check = verify_reduction(inst, t, opts);
            std::ostringstream name;
            name << "alpha=" << inst.universe << " subsets={";
            for (std::size_t s = 0; s < inst.subsets.size(); ++s) {
                if (s) name << ";";
                for (std::size_t b = 0; b < inst.subsets[s].size(); ++b)
                    name << (b ? "," : "") << inst.subsets[s][b];
            }
            name << "} t=" << t;
            out.push_back(record("reduction", name.str(), check.expected, check.eternal_value));
        }
    return out;
}

}  // namespace pursuit
