#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pursuit/engine.hpp"
#include "pursuit/graph.hpp"

namespace pursuit {

enum class BoundKind { Exact, Upper, Lower };

std::string to_string(BoundKind kind);

/// Exact fraction, always reduced with a positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long num, long long den);
    long long ceil() const;
    bool operator==(const Rational&) const = default;
};

/// A named bound value with the structured inputs that justify it.
struct BoundReport {
    std::string name;
    BoundKind kind = BoundKind::Upper;
    long long value = 0;
    std::optional<Rational> rational;  // present when the bound is fractional
    nlohmann::json certificate;
};

/// Time budget of attack level i: ceil((1 - 2^-i) t - 1/2).  Sits between
/// t/2 - 1/2 and t, and increases with both arguments.
int ell(int level, int t);

/// Longest sum-decreasing sequence starting at t: floor(log2 t) + 1.
int maxseq(int t);

/// Exhaustive search over all sum-decreasing sequences with first term t;
/// optionally reports a witness of maximum length.
int maxseq_oracle(int t, std::vector<int>* witness = nullptr);

/// Every term strictly exceeds the sum of all later terms.
bool is_sum_decreasing(const std::vector<int>& seq);

/// Exact eternal value of the n-vertex path: ceil(n / (t+1)).
int path_value(int n, int t);

/// Exact eternal value of the n-vertex cycle, by the three regimes: small
/// cycles (4..6) need 2, large t needs 2, and small t follows
/// ceil((n-3)/(2t+1)) + 1.  C_3 is the 3-clique and needs 1.
int cycle_value(int n, int t);

/// Disjoint-retract decomposition bound: the sum of the parts' eternal
/// values.
BoundReport retract_sum_bound(const std::vector<int>& part_values);

/// Upper bound i*k for a graph that k cops can clear within ell(i, t)
/// time-steps; the membership is verified through the exact engine and a
/// failure throws.
BoundReport recurrent_attack_bound(const Graph& g, int t, int level, int k,
                                   const EngineOptions& opts = {});

struct DecompositionPart {
    std::vector<int> vertices;  // sorted
    int level = 0;              // i
    int cops = 0;               // k
    VertexMap retraction;       // source is the whole graph, fixes this part
};

/// Partition of the graph into retracts, each carrying verified (i, k)
/// parameters.
struct Decomposition {
    std::vector<DecompositionPart> parts;
};

/// Builds the part with a nearest-vertex retraction candidate (ties to the
/// smaller id).  The map is verified later by validate_decomposition.
DecompositionPart make_part(const Graph& g, std::vector<int> vertices, int level, int cops);

/// Least (i, k) by the product i*k (ties to smaller i) such that k cops
/// clear the graph within ell(i, t) time-steps.
std::pair<int, int> minimal_parameters(const Graph& g, int t, const EngineOptions& opts = {});

/// Decomposition from bare vertex sets: nearest-vertex retractions and
/// minimal parameters per part.
Decomposition decompose(const Graph& g, const std::vector<std::vector<int>>& parts, int t,
                        const EngineOptions& opts = {});

/// Checks every Decomposition invariant: the parts partition the vertex
/// set, induce connected subgraphs, carry verified retractions, and their
/// (i, k) memberships hold.  Throws std::invalid_argument naming the part
/// and the broken invariant.
void validate_decomposition(const Graph& g, const Decomposition& d, int t,
                            const EngineOptions& opts = {});

/// Sum of i*k over the parts of a validated decomposition.
BoundReport retract_parameter_bound(const Graph& g, const Decomposition& d, int t,
                                    const EngineOptions& opts = {});

struct TreeBoundResult {
    Decomposition decomposition;
    BoundReport report;
    bool optimal = true;  // false when the greedy fallback was used
};

/// Optimal partition of a tree into subtrees weighted by the least level
/// whose budget covers the subtree radius, minimizing the weight sum.
/// Solved exactly by branch-and-bound over covers by distance balls up to
/// 25 vertices; larger trees fall back to a greedy radius-ell(1) cover.
TreeBoundResult tree_bound(const Graph& tree, int t, const EngineOptions& opts = {});

/// Largest i+1 such that some i+1 vertices are pairwise at distance at
/// least 2*ceil((t+1)(1 - 2^-i)), reported as a lower bound on the
/// eternal value of the tree.
BoundReport tree_lower_bound(const Graph& tree, int t);

struct GridBounds {
    BoundReport lower;
    BoundReport upper;
};

/// Bracketing bounds for the strong product of paths with the given side
/// lengths: prod(n_i) / (2t+1)^p from below, prod(ceil(n_i/(t+1))) from
/// above.
GridBounds strong_grid_bounds(const std::vector<int>& dims, int t);

/// Exact product value k when the first factor needs k cops and every
/// other factor needs exactly one.
BoundReport strong_product_value(int first_value, const std::vector<int>& other_values);

/// Bracketing bounds for the m x n Cartesian grid:
/// mn/(2t^2+2t+1) from below, 64mn/(9t^2+12t+4) from above.
GridBounds cartesian_grid_bounds(int m, int n, int t);

/// Is every vertex within distance t of some member of s?
bool distance_dominates(const Graph& g, const std::vector<int>& s, int t);

/// Size of a minimum distance-t-dominating set, by exhaustive search over
/// vertex subsets of increasing size (24 vertices at most).  Every eternal
/// configuration must t-dominate, so this is a lower bound on the eternal
/// value.
int min_distance_dominating_set(const Graph& g, int t);

/// The t-domination lower bound as a report.
BoundReport distance_domination_bound(const Graph& g, int t);

}  // namespace pursuit
