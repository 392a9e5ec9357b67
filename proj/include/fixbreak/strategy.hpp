#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fixbreak/core.hpp"
#include "fixbreak/game.hpp"
#include "fixbreak/matching.hpp"

namespace fixbreak {

/// Fixer strategy from the sufficiency direction: while the active family's
/// union covers its demand, lock sets through the spanner subgraph and shrink
/// the reduced pot; otherwise swap a fresh element in for one of degree at
/// least t+2. Wins every position satisfying the condition within
/// |S| * |P| rounds.
class FixerEngine {
public:
    explicit FixerEngine(const GameState& initial);

    /// Next action for the authoritative state. Raises ConditionError when
    /// the position turns out to be losing.
    FixerAction next(const GameState& state);

    struct LockedBlock {
        std::vector<int> sets;                        // global set indices
        std::vector<std::vector<int>> representatives; // aligned, sorted ids
    };

    const std::vector<int>& active() const { return active_; }
    const std::vector<LockedBlock>& locked() const { return locked_; }
    std::vector<int> reduced_pot() const;

    /// Representative of set i once locked.
    const std::vector<int>& representatives_of(int set_index) const;

    /// Raises std::logic_error if any locked representative left its set.
    void check_locks(const GameState& state) const;

    /// The assembled eta-transversal; valid once active() is empty.
    EtaTransversal assembled() const;

    /// Digest of (active, locked, reduced pot) for memoized searches.
    std::vector<int> digest() const;

private:
    GameConfig config_;
    std::vector<int> active_;
    std::vector<LockedBlock> locked_;
    std::vector<char> pot_available_;

    void lock_once(const GameState& state);
};

/// Breaker strategy from the necessity direction: holds a deficiency witness
/// W and answers each Fixer move with the proof's case analysis, keeping
/// |union W| < demand(W) - t_value(W) at every Fixer turn. Constructed on a
/// position without a witness it plays empty moves.
class BreakerEngine {
public:
    explicit BreakerEngine(const GameState& initial);

    BreakerMove next(const GameState& after_fixer, const FixerMove& last);

    const std::optional<std::vector<int>>& witness() const { return witness_; }
    int proof_gap_count() const { return gap_count_; }

private:
    GameConfig config_;
    std::optional<std::vector<int>> witness_;
    int gap_count_ = 0;
    std::shared_ptr<const class Attractor> attractor_; // built on first gap
};

/// The case analysis itself, on explicit pre/post families. Raises
/// ProofGapError when the selected case has no legal swap.
BreakerMove necessity_reply(const SetFamily& before, const SetFamily& after,
                            std::span<const int> witness, const FixerMove& last, int t);

/// True iff |union W| < demand(W) - t_value(W) on the family.
bool deficiency_invariant_holds(const SetFamily& family, std::span<const int> witness,
                                int t, const Demand& eta);

/// Fixer wins from this family iff it lies in the least fixed point over
/// "some move makes every reply winning", seeded with the eta-transversal
/// states. State space: all families with the same per-index set sizes.
class Attractor {
public:
    static Attractor build(const SetFamily& family, const GameConfig& config);

    bool fixer_wins(const SetFamily& family) const;
    /// Rounds Fixer needs from this family; -1 when Breaker wins.
    int level(const SetFamily& family) const;
    long states() const { return static_cast<long>(levels_.size()); }

private:
    int t_ = 1;
    int pot_size_ = 0;
    std::vector<int> eta_;
    std::map<std::vector<int>, int> levels_;

    std::vector<int> key_of(const SetFamily& family) const;
};

struct SolveResult {
    Player winner = Player::Breaker;
    std::optional<FixerMove> first_move; // set on a Fixer win needing a move
    int rounds_to_win = -1;              // -1 when Breaker wins
    long states_explored = 0;
};

/// Exact small-instance oracle for the game; guarded by state-space size.
SolveResult exact_solve(const SetFamily& family, const GameConfig& config);

/// Engine-backed referee agents.
FixerAgent fixer_engine_agent(const GameState& initial);
BreakerAgent breaker_engine_agent(const GameState& initial);

struct VerifyInstance {
    SetFamily family;
    GameConfig config;
};

struct VerifyReport {
    int instances = 0;
    int fixer_wins = 0;
    int breaker_wins = 0;
    int mismatches = 0;        // condition vs exact solver
    int proof_gaps = 0;
    int max_fixer_rounds = 0;  // deepest branch among winning instances
    std::vector<std::string> failures;
    bool ok() const { return mismatches == 0 && failures.empty(); }
};

/// Drives both theorem directions: on winning instances the Fixer engine
/// against an exhaustive adversary (every reply explored, win required on
/// every branch within |S| * |P| rounds); on losing instances the Breaker
/// engine against all Fixer moves to `losing_horizon`, asserting the witness
/// invariant at every Fixer turn.
VerifyReport verify_strategy_pair(std::span<const VerifyInstance> instances,
                                  int losing_horizon = 50);

} // namespace fixbreak
