#include "pursuit/atlas.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace pursuit {

namespace {

// Graphs on n <= 9 vertices as edge bitmasks over the pairs (i, j), i < j.

int pair_index(int i, int j, int n) {
    // Row-major upper triangle.
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::uint64_t remap(std::uint64_t mask, const std::vector<int>& perm, int n) {
    std::uint64_t out = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!((mask >> pair_index(i, j, n)) & 1)) continue;
            int a = perm[i], b = perm[j];
            if (a > b) std::swap(a, b);
            out |= 1ull << pair_index(a, b, n);
        }
    return out;
}

std::uint64_t canonical(std::uint64_t mask, const std::vector<std::vector<int>>& perms, int n) {
    std::uint64_t best = ~0ull;
    for (const auto& perm : perms) best = std::min(best, remap(mask, perm, n));
    return best;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return perms;
}

Graph mask_to_graph(std::uint64_t mask, int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if ((mask >> pair_index(i, j, n)) & 1) edges.emplace_back(i, j);
    return build_graph(n, edges);
}

/// One level of augmentation: attach a fresh vertex to every nonempty (or
/// single-vertex, for trees) neighbor subset of every smaller graph, then
/// dedupe by canonical form.
std::vector<std::uint64_t> augment(const std::vector<std::uint64_t>& smaller, int n,
                                   bool treesOnly) {
    auto perms = all_permutations(n);
    std::set<std::uint64_t> classes;
    int prev = n - 1;
    std::uint64_t subsetLimit = 1ull << prev;
    for (std::uint64_t base : smaller) {
        // Re-index the smaller graph's pairs into the larger pair space.
        std::uint64_t lifted = 0;
        for (int i = 0; i < prev; ++i)
            for (int j = i + 1; j < prev; ++j)
                if ((base >> pair_index(i, j, prev)) & 1)
                    lifted |= 1ull << pair_index(i, j, n);
        for (std::uint64_t nbrs = 1; nbrs < subsetLimit; ++nbrs) {
            if (treesOnly && std::popcount(nbrs) != 1) continue;
            std::uint64_t mask = lifted;
            for (int v = 0; v < prev; ++v)
                if ((nbrs >> v) & 1) mask |= 1ull << pair_index(v, prev, n);
            classes.insert(canonical(mask, perms, n));
        }
    }
    return {classes.begin(), classes.end()};
}

std::vector<Graph> enumerate(int n, bool treesOnly, int cap) {
    if (n < 1 || n > cap)
        throw std::invalid_argument("atlas: enumeration supports 1 <= n <= " +
                                    std::to_string(cap));
    std::vector<std::uint64_t> level{0};  // the single vertex
    for (int size = 2; size <= n; ++size) level = augment(level, size, treesOnly);
    std::vector<Graph> out;
    out.reserve(level.size());
    for (std::uint64_t mask : level) out.push_back(mask_to_graph(mask, n));
    return out;
}

}  // namespace

std::vector<Graph> all_connected_graphs(int n) { return enumerate(n, false, 7); }

std::vector<Graph> all_trees(int n) { return enumerate(n, true, 9); }

std::vector<Graph> random_connected_graphs(int count, int minN, int maxN, std::uint32_t seed) {
    if (count < 0 || minN < 1 || maxN < minN || maxN > 64)
        throw std::invalid_argument("random_connected_graphs: bad parameters");
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pickN(minN, maxN);
    std::uniform_real_distribution<double> pickP(0.25, 0.75);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Graph> out;
    while (static_cast<int>(out.size()) < count) {
        int n = pickN(rng);
        double p = pickP(rng);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (coin(rng) < p) edges.emplace_back(i, j);
        Graph g = build_graph(n, edges);
        if (g.connected()) out.push_back(std::move(g));
    }
    return out;
}

}  // namespace pursuit
