#include "fixbreak/game.hpp"

#include <algorithm>
#include <stdexcept>

#include "fixbreak/errors.hpp"

namespace fixbreak {

namespace {

std::string clause(const std::string& what) { return what; }

void check_fixer_move(const SetFamily& family, int pot_size, const FixerMove& m) {
    if (m.set_index < 0 || m.set_index >= family.size())
        throw IllegalMoveError(clause("fixer move: set index out of range"));
    if (m.insert < 0 || m.insert >= pot_size)
        throw IllegalMoveError(clause("fixer move: inserted element not in pot"));
    if (m.remove < 0 || m.remove >= pot_size)
        throw IllegalMoveError(clause("fixer move: removed element not in pot"));
    if (m.insert == m.remove)
        throw IllegalMoveError(clause("fixer move: inserted and removed elements equal"));
    if (family.contains(m.set_index, m.insert))
        throw IllegalMoveError(clause("fixer move: x not in S violated (inserted element already in set)"));
    if (!family.contains(m.set_index, m.remove))
        throw IllegalMoveError(clause("fixer move: y in S violated (removed element not in set)"));
}

std::pair<int, int> swap_elements(const FixerMove& last, SwapDir dir) {
    // x is Fixer's inserted element, y his removed one.
    if (dir == SwapDir::insert_x_remove_y) return {last.insert, last.remove};
    return {last.remove, last.insert};
}

void check_breaker_move(const SetFamily& after_fixer, const FixerMove& last, int t,
                        const BreakerMove& m) {
    if (static_cast<int>(m.swaps.size()) > t)
        throw IllegalMoveError(clause("breaker move: more than t swaps"));
    std::vector<char> used(after_fixer.size(), 0);
    for (const BreakerSwap& s : m.swaps) {
        if (s.set_index < 0 || s.set_index >= after_fixer.size())
            throw IllegalMoveError(clause("breaker move: set index out of range"));
        if (s.set_index == last.set_index)
            throw IllegalMoveError(clause("breaker move: swap targets Fixer's set"));
        if (used[s.set_index])
            throw IllegalMoveError(clause("breaker move: repeated set index"));
        used[s.set_index] = 1;
        auto [ins, rem] = swap_elements(last, s.dir);
        if (after_fixer.contains(s.set_index, ins))
            throw IllegalMoveError(clause("breaker move: inserted element already in set"));
        if (!after_fixer.contains(s.set_index, rem))
            throw IllegalMoveError(clause("breaker move: removed element not in set"));
    }
}

} // namespace

GameState::GameState(GameConfig config, SetFamily family)
    : config_(std::move(config)), family_(std::move(family)) {
    if (config_.t < 1) throw std::invalid_argument("t must be at least 1");
    if (family_.pot_size() != config_.pot.size())
        throw std::invalid_argument("family pot size does not match config pot");
    if (config_.eta.size() != family_.size())
        throw std::invalid_argument("demand size does not match family size");
    if (config_.pot.size() < config_.eta.total())
        throw std::invalid_argument("pot smaller than total demand");
}

std::vector<FixerMove> legal_fixer_moves(const SetFamily& family, int pot_size) {
    std::vector<FixerMove> moves;
    for (int i = 0; i < family.size(); ++i)
        for (int x = 0; x < pot_size; ++x) {
            if (family.contains(i, x)) continue;
            for (int y : family.set(i)) moves.push_back({i, x, y});
        }
    return moves;
}

std::vector<FixerMove> legal_fixer_moves(const GameState& state) {
    if (state.pending_fixer())
        throw std::invalid_argument("fixer move already pending");
    return legal_fixer_moves(state.family(), state.config().pot.size());
}

std::vector<BreakerMove> legal_breaker_moves(const SetFamily& after_fixer,
                                             const FixerMove& last, int t) {
    // Per set at most one direction is legal: a candidate holds exactly one
    // of Fixer's two elements.
    std::vector<BreakerSwap> options;
    for (int j = 0; j < after_fixer.size(); ++j) {
        if (j == last.set_index) continue;
        bool has_x = after_fixer.contains(j, last.insert);
        bool has_y = after_fixer.contains(j, last.remove);
        if (has_x && !has_y) options.push_back({j, SwapDir::insert_y_remove_x});
        else if (has_y && !has_x) options.push_back({j, SwapDir::insert_x_remove_y});
    }
    std::vector<BreakerMove> moves;
    const int n = static_cast<int>(options.size());
    std::vector<int> pick;
    for (int k = 0; k <= std::min(t, n); ++k) {
        if (k == 0) {
            moves.push_back({});
            continue;
        }
        pick.resize(k);
        for (int j = 0; j < k; ++j) pick[j] = j;
        while (true) {
            BreakerMove m;
            for (int j : pick) m.swaps.push_back(options[j]);
            moves.push_back(std::move(m));
            int j = k - 1;
            while (j >= 0 && pick[j] == n - k + j) --j;
            if (j < 0) break;
            ++pick[j];
            for (int l = j + 1; l < k; ++l) pick[l] = pick[l - 1] + 1;
        }
    }
    return moves;
}

std::vector<BreakerMove> legal_breaker_moves(const GameState& state, const FixerMove& last) {
    if (!state.pending_fixer() || !(*state.pending_fixer() == last))
        throw std::invalid_argument("breaker replies requested for a move that is not pending");
    return legal_breaker_moves(state.family(), last, state.config().t);
}

SetFamily family_after_breaker(const SetFamily& after_fixer, const FixerMove& last,
                               const BreakerMove& move) {
    SetFamily next = after_fixer;
    for (const BreakerSwap& s : move.swaps) {
        auto [ins, rem] = swap_elements(last, s.dir);
        next = next.with_swap(s.set_index, ins, rem);
    }
    return next;
}

GameState apply_fixer(const GameState& state, const FixerMove& move) {
    if (state.pending_fixer())
        throw IllegalMoveError("fixer move while another is pending");
    check_fixer_move(state.family(), state.config().pot.size(), move);
    GameState next = state;
    next.family_ = state.family().with_swap(move.set_index, move.insert, move.remove);
    next.pending_fixer_ = move;
    return next;
}

GameState apply_breaker(const GameState& state, const BreakerMove& move) {
    if (!state.pending_fixer())
        throw IllegalMoveError("breaker move with no preceding fixer move");
    const FixerMove last = *state.pending_fixer();
    check_breaker_move(state.family(), last, state.config().t, move);
    GameState next = state;
    next.family_ = family_after_breaker(state.family(), last, move);
    next.pending_fixer_.reset();
    next.history_.push_back({last, move, next.family_.sets()});
    return next;
}

std::optional<EtaTransversal> is_won(const GameState& state) {
    return find_eta_transversal(state.family(), state.config().eta);
}

Outcome play(GameState state, const FixerAgent& fixer, const BreakerAgent& breaker,
             int round_limit) {
    if (round_limit < 1) throw std::invalid_argument("round limit must be at least 1");
    auto finish = [&](Player winner, int rounds, std::optional<EtaTransversal> tv,
                      std::optional<Player> forfeited, std::string reason) {
        Outcome out;
        out.winner = winner;
        out.rounds = rounds;
        out.transversal = std::move(tv);
        out.trace = state.history();
        out.forfeited_by = forfeited;
        out.forfeit_reason = std::move(reason);
        return out;
    };

    if (auto tv = is_won(state))
        return finish(Player::Fixer, 0, std::move(tv), std::nullopt, {});

    for (int round = 1; round <= round_limit; ++round) {
        FixerAction action;
        try {
            action = fixer(state);
        } catch (const std::runtime_error& e) {
            return finish(Player::Breaker, round, std::nullopt, Player::Fixer, e.what());
        }
        if (std::holds_alternative<DeclareWin>(action)) {
            // The round-start check already failed, so the claim is false.
            return finish(Player::Breaker, round, std::nullopt, Player::Fixer,
                          "declared victory without an eta-transversal");
        }
        FixerMove fm = std::get<FixerMove>(action);
        try {
            state = apply_fixer(state, fm);
        } catch (const IllegalMoveError& e) {
            return finish(Player::Breaker, round, std::nullopt, Player::Fixer, e.what());
        }
        try {
            BreakerMove bm = breaker(state, fm);
            state = apply_breaker(state, bm);
        } catch (const std::runtime_error& e) {
            return finish(Player::Fixer, round, std::nullopt, Player::Breaker, e.what());
        }
        if (auto tv = is_won(state))
            return finish(Player::Fixer, round, std::move(tv), std::nullopt, {});
    }
    return finish(Player::Breaker, round_limit, std::nullopt, std::nullopt, {});
}

} // namespace fixbreak
