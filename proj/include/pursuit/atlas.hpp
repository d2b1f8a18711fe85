#pragma once

#include <cstdint>
#include <vector>

#include "pursuit/graph.hpp"

namespace pursuit {

/// All connected graphs on exactly n vertices, one per isomorphism class,
/// built by vertex augmentation with brute-force canonical forms.
/// Supported up to n = 7 (853 classes).
std::vector<Graph> all_connected_graphs(int n);

/// All trees on exactly n vertices, one per isomorphism class.  Supported
/// up to n = 9.
std::vector<Graph> all_trees(int n);

/// Deterministic sample of connected Erdos-Renyi graphs with vertex counts
/// in [minN, maxN].
std::vector<Graph> random_connected_graphs(int count, int minN, int maxN,
                                           std::uint32_t seed);

}  // namespace pursuit
