#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fixbreak/core.hpp"
#include "fixbreak/matching.hpp"

namespace fixbreak {

/// Game parameters: the pot, Breaker's swap budget t, and the demand.
/// Requires |P| >= total demand.
struct GameConfig {
    Pot pot;
    int t = 1;
    Demand eta;
};

/// Fixer swaps `insert` (not in the set) in for `remove` (in the set) in one set.
struct FixerMove {
    int set_index = -1;
    int insert = -1;
    int remove = -1;
    bool operator==(const FixerMove&) const = default;
};

/// One Breaker swap: in set `set_index`, either Fixer's inserted element
/// replaces his removed one or vice versa.
enum class SwapDir { insert_x_remove_y, insert_y_remove_x };

struct BreakerSwap {
    int set_index = -1;
    SwapDir dir = SwapDir::insert_x_remove_y;
    bool operator==(const BreakerSwap&) const = default;
};

/// At most t swaps on distinct sets other than Fixer's, using only the two
/// elements of the preceding Fixer move. Empty = pass.
struct BreakerMove {
    std::vector<BreakerSwap> swaps;
    bool operator==(const BreakerMove&) const = default;
};

struct Round {
    FixerMove fixer;
    BreakerMove breaker;
    std::vector<std::vector<int>> family_after;
};

/// Immutable game position: family, config, completed rounds, and a pending
/// Fixer move between apply_fixer and apply_breaker.
class GameState {
public:
    GameState(GameConfig config, SetFamily family);

    const GameConfig& config() const { return config_; }
    const SetFamily& family() const { return family_; }
    const std::vector<Round>& history() const { return history_; }
    const std::optional<FixerMove>& pending_fixer() const { return pending_fixer_; }

private:
    GameConfig config_;
    SetFamily family_;
    std::vector<Round> history_;
    std::optional<FixerMove> pending_fixer_;

    friend GameState apply_fixer(const GameState&, const FixerMove&);
    friend GameState apply_breaker(const GameState&, const BreakerMove&);
};

enum class Player { Fixer, Breaker };

/// Final referee verdict. A Fixer win carries the validating eta-transversal;
/// a forfeit is recorded separately from a game-theoretic loss.
struct Outcome {
    Player winner = Player::Breaker;
    int rounds = 0;
    std::optional<EtaTransversal> transversal;
    std::vector<Round> trace;
    std::optional<Player> forfeited_by;
    std::string forfeit_reason;
};

struct DeclareWin {};
using FixerAction = std::variant<FixerMove, DeclareWin>;
using FixerAgent = std::function<FixerAction(const GameState&)>;
using BreakerAgent = std::function<BreakerMove(const GameState&, const FixerMove&)>;

/// All legal Fixer moves, ordered by (set index, inserted id, removed id).
std::vector<FixerMove> legal_fixer_moves(const SetFamily& family, int pot_size);
std::vector<FixerMove> legal_fixer_moves(const GameState& state);

/// All legal Breaker replies to `last` on the post-Fixer family, including
/// the empty move, ordered by size then lexicographically.
std::vector<BreakerMove> legal_breaker_moves(const SetFamily& after_fixer,
                                             const FixerMove& last, int t);
std::vector<BreakerMove> legal_breaker_moves(const GameState& state, const FixerMove& last);

/// Apply the swaps of a Breaker move to a family (no legality check beyond
/// element presence; used by validators and the solver).
SetFamily family_after_breaker(const SetFamily& after_fixer, const FixerMove& last,
                               const BreakerMove& move);

/// Validating applications; an illegal move raises IllegalMoveError naming
/// the violated clause.
GameState apply_fixer(const GameState& state, const FixerMove& move);
GameState apply_breaker(const GameState& state, const BreakerMove& move);

/// Win test: delegates to find_eta_transversal on the current family.
std::optional<EtaTransversal> is_won(const GameState& state);

/// Referee loop: win check at round start and after each completed
/// (Fixer, Breaker) round. Fixer may declare victory only when the win test
/// succeeds; Breaker wins when the round limit runs out; an agent playing an
/// illegal move forfeits.
Outcome play(GameState state, const FixerAgent& fixer, const BreakerAgent& breaker,
             int round_limit);

} // namespace fixbreak
