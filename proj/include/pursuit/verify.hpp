#pragma once

#include <string>
#include <vector>

#include "pursuit/engine.hpp"
#include "pursuit/reduction.hpp"

namespace pursuit {

struct CheckRecord {
    std::string suite;
    std::string instance;
    std::string expected;
    std::string actual;
    bool ok = false;
};

/// Formula vs exact solver on paths: eternal value equals ceil(n/(t+1)).
std::vector<CheckRecord> verify_paths(int maxN, int maxT, const EngineOptions& opts = {});

/// Formula vs exact solver on cycles (three regimes).
std::vector<CheckRecord> verify_cycles(int maxN, int maxT, const EngineOptions& opts = {});

/// Tree sandwich on every tree up to maxN vertices: scattered-set lower
/// bound <= exact <= ball-decomposition bound, with the decomposition
/// passing its invariants.
std::vector<CheckRecord> verify_trees(int maxN, int maxT, const EngineOptions& opts = {});

/// Grid checks: capture-time formula on tiny Cartesian grids, product
/// distance laws, and formula bounds bracketing the exact value on the
/// 3x3 / 3x4 grids.
std::vector<CheckRecord> verify_grids(int maxN, int maxT, const EngineOptions& opts = {});

/// Reduction equivalence on every set cover instance with at most two
/// elements and two subsets, for t up to maxT (capped at 2).
std::vector<CheckRecord> verify_reduction_suite(int maxT, const EngineOptions& opts = {});

/// All set cover instances with universe 1..maxAlpha and 1..maxBeta
/// subsets, up to subset reordering.
std::vector<SetCoverInstance> tiny_set_cover_corpus(int maxAlpha, int maxBeta);

}  // namespace pursuit
