#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pursuit/engine.hpp"
#include "pursuit/graph.hpp"

namespace pursuit {

/// A set cover instance over a 1-based universe {1..universe}.
struct SetCoverInstance {
    int universe = 0;
    std::vector<std::vector<int>> subsets;
    int k = 1;  // target cover size of the decision problem
};

/// Text format: line "alpha beta k", then beta lines of space-separated
/// 1-based element ids; '#' lines are ignored.
SetCoverInstance parse_set_cover(std::istream& in);

void check_instance(const SetCoverInstance& instance);

enum class ReductionRole { Subset, Element, AttachedPath, AdditionalPath };

std::string to_string(ReductionRole role);

/// The pursuit graph of a set cover instance at time budget t:
///   - one vertex per subset, all pairwise adjacent;
///   - one vertex per element, adjacent to the subsets containing it, each
///     carrying a pendant path of t-1 vertices;
///   - floor(log2 t) + 1 additional paths of t vertices whose first vertex
///     is adjacent to every subset vertex.
/// Vertices are numbered subset block, element block, attached paths
/// element-major, additional paths last.
struct ReductionGraph {
    Graph graph;
    int t = 1;
    std::vector<ReductionRole> roles;
    std::vector<int> subset_vertices;
    std::vector<int> element_vertices;
    std::vector<std::vector<int>> attached_paths;    // per element, may be empty
    std::vector<std::vector<int>> additional_paths;  // first entry is the element end
};

ReductionGraph build_reduction(const SetCoverInstance& instance, int t);

/// Exact minimum cover size by exhaustive search; the subset count is
/// capped at 20.
int set_cover_oracle(const SetCoverInstance& instance);

struct ReductionCheck {
    bool ok = false;
    int cover_size = 0;     // oracle value k*
    int eternal_value = 0;  // solver value on the reduction graph
    int expected = 0;       // k* + floor(log2 t) + 1
};

/// Confirms both directions of the reduction equivalence by comparing the
/// exact solver against the cover oracle.
ReductionCheck verify_reduction(const SetCoverInstance& instance, int t,
                                const EngineOptions& opts = {});

}  // namespace pursuit
