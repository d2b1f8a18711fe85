#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pursuit/graph.hpp"

namespace pursuit {

/// Canonical multiset of cop positions: a non-decreasing vector of vertex
/// ids.  Several cops may share a vertex.
using CopConfig = std::vector<int>;

struct EngineOptions {
    /// Cap on solver table cells (state entries plus cached cop moves).
    std::size_t memo_budget = 50'000'000;
    /// Worker threads for the per-round sweeps.  Results are identical for
    /// any value; 1 keeps everything on the calling thread.
    int jobs = 1;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Number of multisets of size k over n vertices, C(n+k-1, k); throws
/// BudgetExceeded once the count passes `cap`.
long long config_count(int n, int k, long long cap);

/// All canonical k-cop configurations on n vertices in lexicographic
/// order, each exactly once.
std::vector<CopConfig> enumerate_configs(int n, int k,
                                         const EngineOptions& opts = {});

/// Capture-moment target for bounded pursuit: either any configuration, or
/// an explicit set the cops must occupy at the instant of capture.  The
/// eternal game threads its winning set through here.
class TargetSet {
public:
    static TargetSet all() { return TargetSet(); }
    static TargetSet of(std::vector<CopConfig> configs);
    bool is_all() const { return !configs_.has_value(); }
    const std::vector<CopConfig>& configs() const { return *configs_; }

private:
    TargetSet() = default;
    std::optional<std::vector<CopConfig>> configs_;  // sorted when present
};

struct SolveStats {
    long long configs_enumerated = 0;
    long long state_cells = 0;     // DP cells allocated across solves
    int fixpoint_rounds = 0;       // deletion rounds across eternal solves
};

struct CaptureOutcome {
    bool win = false;
    /// Capture-moment configurations reachable under the engine's canonical
    /// winning strategy, over all robber lines of play.  Empty on a loss.
    std::vector<CopConfig> capture_configs;
};

/// Single bounded play: cops at `start` move first and alternate with an
/// adversarial robber placed at `robber`; both sides move within closed
/// neighborhoods.  Capture happens the instant a cop lands on the robber
/// or the robber steps onto a cop.  Returns a win iff the cops can force a
/// capture within t time-steps whose capture-moment configuration lies in
/// `target`.
CaptureOutcome bounded_capture(const Graph& g, const CopConfig& start, int robber,
                               int t, const TargetSet& target = TargetSet::all(),
                               const EngineOptions& opts = {}, SolveStats* stats = nullptr);

struct SinglePlayResult {
    bool value = false;
    std::optional<CopConfig> witness;  // an initial configuration that works
};

/// Do k cops have an initial configuration capturing every robber
/// placement within t time-steps of a single play?  When a configuration
/// occupies every vertex the robber cannot appear and the play is won
/// vacuously.
SinglePlayResult single_play_value(const Graph& g, int k, int t,
                                   const EngineOptions& opts = {},
                                   SolveStats* stats = nullptr);

/// Least k with single_play_value(g, k, t) true.
int min_cops_single_play(const Graph& g, int t, const EngineOptions& opts = {},
                         SolveStats* stats = nullptr);

/// Capture time of k cops, counted in rounds including the initial
/// placement round: a capture on the very first cop move reports 2.
/// Returns nullopt when k cops can never force a capture.
std::optional<int> capture_time(const Graph& g, int k, const EngineOptions& opts = {},
                                SolveStats* stats = nullptr);

/// Greatest set W of k-cop configurations such that from every member,
/// every robber placement on an unoccupied vertex is captured within t
/// time-steps with the capture-moment configuration again in W.  Computed
/// by iterated deletion from the single-play winners.  Empty iff k cops do
/// not suffice eternally.
std::vector<CopConfig> eternal_win_set(const Graph& g, int k, int t,
                                       const EngineOptions& opts = {},
                                       SolveStats* stats = nullptr);

/// Key of a cop-turn state inside a strategy table.
struct StateKey {
    CopConfig config;
    int robber = 0;
    int steps_left = 0;
    auto operator<=>(const StateKey&) const = default;
};

/// Positional cop strategy certifying an eternal win: for every winning
/// configuration and robber placement, the lexicographically least move
/// that preserves the certificate, closed under adversarial play.
struct StrategyTable {
    std::uint64_t graph_hash = 0;
    int n = 0;
    int k = 0;
    int t = 0;
    CopConfig start;                     // lexicographically least winning config
    std::vector<CopConfig> winning;      // sorted
    bool certified = true;               // built from a verified fixpoint
    std::map<StateKey, CopConfig> moves;
};

struct SolveResult {
    int value = 0;
    StrategyTable certificate;
    SolveStats stats;
};

/// Least k whose eternal win set is nonempty, with a strategy-table
/// witness.
SolveResult eternal_cop_number(const Graph& g, int t, const EngineOptions& opts = {});

/// Classic cop number: least k capturing a single robber with no time
/// bound, solved by iterating the bounded sweep until the win set
/// stabilizes.
int cop_number(const Graph& g, const EngineOptions& opts = {},
               SolveStats* stats = nullptr);

/// Builds the certified strategy table for k cops at horizon t.  Throws if
/// the eternal win set is empty.
StrategyTable extract_strategy(const Graph& g, int k, int t,
                               const EngineOptions& opts = {});

/// Builds a best-effort table against an arbitrary configuration set
/// instead of the verified fixpoint.  States with no certified move get
/// the least capturing successor, else the least successor; the table is
/// marked uncertified.  Useful for demonstrating that a candidate set is
/// not eternally winning.
StrategyTable extract_strategy_against(const Graph& g, int k, int t,
                                       const std::vector<CopConfig>& target,
                                       const EngineOptions& opts = {});

/// One scripted play: a placement and the robber's chosen move per
/// time-step (unused entries are ignored once captured).
struct RobberPlay {
    int placement = 0;
    std::vector<int> moves;
};

enum class PlayOutcome { Captured, Survived, InputRejected };

struct PlayTranscript {
    int placement = -1;
    PlayOutcome outcome = PlayOutcome::Survived;
    int capture_step = 0;                       // time-steps used when captured
    CopConfig end_config;
    std::vector<std::pair<CopConfig, int>> trace;  // (cops, robber) after each half-step
    std::string diagnostic;
};

struct ReplayResult {
    bool all_captured = false;
    std::vector<PlayTranscript> plays;
};

/// Replays scripted robber plays against a strategy table, starting from
/// the table's start configuration and chaining capture configurations
/// into the next play.  Illegal robber input rejects the play without
/// advancing state; a play that outlives t time-steps is reported as
/// survived (impossible for certified tables).  A missing table entry for
/// a reachable state throws std::logic_error.
ReplayResult replay(const Graph& g, const StrategyTable& table,
                    const std::vector<RobberPlay>& script);

/// Interactive driver used by the CLI: one eternal match, stepped move by
/// move.  Illegal input never mutates state.
class PlaySession {
public:
    PlaySession(const Graph& g, const StrategyTable& table);

    enum class Phase { AwaitingPlacement, AwaitingRobberMove, Done };
    Phase phase() const { return phase_; }
    const CopConfig& config() const { return config_; }
    int robber() const { return robber_; }
    int steps_left() const { return steps_left_; }
    int plays_completed() const { return plays_completed_; }

    /// Places the robber and runs the cops' reply.  Returns a diagnostic on
    /// illegal input, otherwise a description of the cop move.
    std::string place_robber(int v, bool* captured);
    std::string move_robber(int v, bool* captured);

private:
    std::string run_cop_turn(bool* captured);

    const Graph& g_;
    const StrategyTable& table_;
    Phase phase_ = Phase::AwaitingPlacement;
    CopConfig config_;
    int robber_ = -1;
    int steps_left_ = 0;
    int plays_completed_ = 0;
};

/// Optimal robber built from the fixpoint's deletion history: from any
/// configuration outside the final win set it forces, play by play, a
/// strictly earlier deletion round, ending in a play the cops lose
/// outright.
class AdversaryOracle {
public:
    AdversaryOracle(const Graph& g, int k, int t, const EngineOptions& opts = {});

    /// Final fixpoint membership for a configuration.
    bool eternally_winning(const CopConfig& config) const;

    /// Runs the adversary against a cop table from the given start
    /// configuration until the robber survives a play (success) or the
    /// play cap is hit.  Returns the demonstration transcript.
    ReplayResult demonstrate(const StrategyTable& copTable, const CopConfig& start,
                             int maxPlays = 0) const;

private:
    const Graph& g_;
    int k_;
    int t_;
    EngineOptions opts_;
    std::vector<CopConfig> configs_;
    std::vector<std::vector<char>> rounds_;  // rounds_[j] = membership after j deletions
    int drop_round(int id) const;
};

}  // namespace pursuit
