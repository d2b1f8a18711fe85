#include "pursuit/reduction.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "pursuit/bounds.hpp"

namespace pursuit {

SetCoverInstance parse_set_cover(std::istream& in) {
    SetCoverInstance instance;
    std::string line;
    int beta = -1;
    while (std::getline(in, line)) {
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        if (beta < 0) {
            if (!(fields >> instance.universe >> beta >> instance.k))
                throw std::invalid_argument("set cover: bad header line");
            continue;
        }
        std::vector<int> subset;
        int id;
        while (fields >> id) subset.push_back(id);
        instance.subsets.push_back(std::move(subset));
    }
    if (beta < 0) throw std::invalid_argument("set cover: missing header line");
    if (static_cast<int>(instance.subsets.size()) != beta)
        throw std::invalid_argument("set cover: header announced " + std::to_string(beta) +
                                    " subsets, found " + std::to_string(instance.subsets.size()));
    check_instance(instance);
    return instance;
}

void check_instance(const SetCoverInstance& instance) {
    if (instance.universe < 1 || instance.subsets.empty() || instance.k < 1)
        throw std::invalid_argument("set cover: need alpha, beta, k >= 1");
    std::vector<char> covered(instance.universe + 1, 0);
    for (const auto& subset : instance.subsets)
        for (int b : subset) {
            if (b < 1 || b > instance.universe)
                throw std::invalid_argument("set cover: element " + std::to_string(b) +
                                            " outside the universe");
            covered[b] = 1;
        }
    for (int b = 1; b <= instance.universe; ++b)
        if (!covered[b])
            throw std::invalid_argument("set cover: element " + std::to_string(b) +
                                        " is in no subset");
}

std::string to_string(ReductionRole role) {
    switch (role) {
        case ReductionRole::Subset: return "subset";
        case ReductionRole::Element: return "element";
        case ReductionRole::AttachedPath: return "attached-path";
        case ReductionRole::AdditionalPath: return "additional-path";
    }
    return "?";
}

namespace {

/// Every edge of the construction must be one of the five permitted kinds;
/// anything else is a construction bug.
void check_structure(const ReductionGraph& r, const SetCoverInstance& instance) {
    const Graph& g = r.graph;
    int beta = static_cast<int>(r.subset_vertices.size());
    for (int s = 0; s < beta; ++s)
        for (int s2 = s + 1; s2 < beta; ++s2)
            if (!g.adjacent(r.subset_vertices[s], r.subset_vertices[s2]))
                throw std::logic_error("reduction: subset vertices do not form a clique");
    for (const auto& path : r.additional_paths)
        for (int s = 0; s < beta; ++s)
            if (!g.adjacent(path.front(), r.subset_vertices[s]))
                throw std::logic_error("reduction: additional path not adjacent to the clique");

    auto path_edge = [](const std::vector<int>& path, int u, int v) {
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if ((path[i] == u && path[i + 1] == v) || (path[i] == v && path[i + 1] == u))
                return true;
        return false;
    };
    for (auto [u, v] : g.edges()) {
        ReductionRole ru = r.roles[u], rv = r.roles[v];
        bool ok = false;
        if (ru == ReductionRole::Subset && rv == ReductionRole::Subset) {
            ok = true;  // clique edge
        } else if ((ru == ReductionRole::Subset && rv == ReductionRole::Element) ||
                   (rv == ReductionRole::Subset && ru == ReductionRole::Element)) {
            int subsetIdx = ru == ReductionRole::Subset ? u : v;
            int elementIdx = ru == ReductionRole::Subset ? v : u;
            int s = subsetIdx;  // subset block starts at 0
            int b = elementIdx - beta + 1;
            const auto& members = instance.subsets[s];
            ok = std::find(members.begin(), members.end(), b) != members.end();
        } else if ((ru == ReductionRole::Subset && rv == ReductionRole::AdditionalPath) ||
                   (rv == ReductionRole::Subset && ru == ReductionRole::AdditionalPath)) {
            int other = ru == ReductionRole::Subset ? v : u;
            ok = false;
            for (const auto& path : r.additional_paths)
                if (path.front() == other) ok = true;
        } else {
            for (std::size_t e = 0; e < r.attached_paths.size(); ++e) {
                std::vector<int> chain{r.element_vertices[e]};
                chain.insert(chain.end(), r.attached_paths[e].begin(), r.attached_paths[e].end());
                if (path_edge(chain, u, v)) ok = true;
            }
            for (const auto& path : r.additional_paths)
                if (path_edge(path, u, v)) ok = true;
        }
        if (!ok)
            throw std::logic_error("reduction: unexpected edge (" + std::to_string(u) + "," +
                                   std::to_string(v) + ")");
    }
}

}  // namespace

ReductionGraph build_reduction(const SetCoverInstance& instance, int t) {
    check_instance(instance);
    if (t < 1) throw std::invalid_argument("build_reduction: t must be positive");

    int alpha = instance.universe;
    int beta = static_cast<int>(instance.subsets.size());
    int extra = maxseq(t);  // floor(log2 t) + 1 additional paths
    int n = beta + alpha + alpha * (t - 1) + extra * t;

    ReductionGraph r;
    r.t = t;
    r.roles.assign(n, ReductionRole::Subset);
    std::vector<std::pair<int, int>> edges;

    for (int s = 0; s < beta; ++s) {
        r.subset_vertices.push_back(s);
        for (int s2 = s + 1; s2 < beta; ++s2) edges.emplace_back(s, s2);
    }
    for (int b = 0; b < alpha; ++b) {
        int v = beta + b;
        r.element_vertices.push_back(v);
        r.roles[v] = ReductionRole::Element;
    }
    for (int s = 0; s < beta; ++s)
        for (int b : instance.subsets[s]) edges.emplace_back(s, beta + b - 1);

    int next = beta + alpha;
    r.attached_paths.resize(alpha);
    for (int b = 0; b < alpha; ++b) {
        int prev = beta + b;
        for (int d = 0; d < t - 1; ++d) {
            r.roles[next] = ReductionRole::AttachedPath;
            r.attached_paths[b].push_back(next);
            edges.emplace_back(prev, next);
            prev = next++;
        }
    }
    for (int q = 0; q < extra; ++q) {
        std::vector<int> path;
        for (int d = 0; d < t; ++d) {
            r.roles[next] = ReductionRole::AdditionalPath;
            path.push_back(next);
            if (d > 0) edges.emplace_back(next - 1, next);
            ++next;
        }
        for (int s = 0; s < beta; ++s) edges.emplace_back(path.front(), s);
        r.additional_paths.push_back(std::move(path));
    }

    r.graph = build_graph(n, edges);
    check_structure(r, instance);
    return r;
}

int set_cover_oracle(const SetCoverInstance& instance) {
    check_instance(instance);
    int beta = static_cast<int>(instance.subsets.size());
    if (beta > 20) throw BudgetExceeded("set_cover_oracle: more than 20 subsets");
    if (instance.universe > 31)
        throw BudgetExceeded("set_cover_oracle: universe larger than 31 elements");
    unsigned fullUniverse = (1u << instance.universe) - 1;
    std::vector<unsigned> masks(beta, 0);
    for (int s = 0; s < beta; ++s)
        for (int b : instance.subsets[s]) masks[s] |= 1u << (b - 1);
    int best = beta;
    for (unsigned pick = 1; pick < (1u << beta); ++pick) {
        unsigned covered = 0;
        for (int s = 0; s < beta; ++s)
            if ((pick >> s) & 1) covered |= masks[s];
        if (covered == fullUniverse)
            best = std::min(best, std::popcount(pick));
    }
    return best;
}

ReductionCheck verify_reduction(const SetCoverInstance& instance, int t,
                                const EngineOptions& opts) {
    ReductionCheck check;
    check.cover_size = set_cover_oracle(instance);
    ReductionGraph r = build_reduction(instance, t);
    check.eternal_value = eternal_cop_number(r.graph, t, opts).value;
    check.expected = check.cover_size + maxseq(t);
    // The construction promises: a cover of size <= k exists iff the
    // eternal value is <= k + floor(log2 t) + 1, simultaneously for every
    // k.  That is exactly value == k* + floor(log2 t) + 1.
    check.ok = check.eternal_value == check.expected;
    return check;
}

}  // namespace pursuit
