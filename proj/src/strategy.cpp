#include "fixbreak/strategy.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fixbreak/errors.hpp"

namespace fixbreak {

namespace {

constexpr int kSolverMaxPot = 10;
constexpr int kSolverMaxSets = 6;
constexpr long kSolverMaxStates = 200000;
constexpr int kWitnessSearchCap = 24;

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k > n) return out;
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        out.push_back(pick);
        int j = k - 1;
        while (j >= 0 && pick[j] == n - k + j) --j;
        if (j < 0) break;
        ++pick[j];
        for (int l = j + 1; l < k; ++l) pick[l] = pick[l - 1] + 1;
    }
    if (k == 0) out.assign(1, {});
    return out;
}

std::vector<int> family_digest(const SetFamily& family) {
    std::vector<int> key;
    for (int i = 0; i < family.size(); ++i) {
        for (int x : family.set(i)) key.push_back(x);
        key.push_back(-1);
    }
    return key;
}

std::string describe_family(const SetFamily& family) {
    std::ostringstream os;
    os << "{";
    for (int i = 0; i < family.size(); ++i) {
        os << (i ? ", {" : "{");
        for (std::size_t j = 0; j < family.set(i).size(); ++j)
            os << (j ? "," : "") << family.set(i)[j];
        os << "}";
    }
    os << "}";
    return os.str();
}

} // namespace

// ---------------------------------------------------------------------------
// Fixer engine

FixerEngine::FixerEngine(const GameState& initial)
    : config_(initial.config()), pot_available_(initial.config().pot.size(), 1) {
    active_.resize(initial.family().size());
    std::iota(active_.begin(), active_.end(), 0);
}

std::vector<int> FixerEngine::reduced_pot() const {
    std::vector<int> out;
    for (int x = 0; x < static_cast<int>(pot_available_.size()); ++x)
        if (pot_available_[x]) out.push_back(x);
    return out;
}

const std::vector<int>& FixerEngine::representatives_of(int set_index) const {
    for (const auto& block : locked_)
        for (std::size_t p = 0; p < block.sets.size(); ++p)
            if (block.sets[p] == set_index) return block.representatives[p];
    throw std::invalid_argument("set is not locked");
}

void FixerEngine::check_locks(const GameState& state) const {
    for (const auto& block : locked_)
        for (std::size_t p = 0; p < block.sets.size(); ++p)
            for (int r : block.representatives[p])
                if (!state.family().contains(block.sets[p], r))
                    throw std::logic_error("fixer engine: locked representative removed from its set");
}

EtaTransversal FixerEngine::assembled() const {
    EtaTransversal tv;
    tv.assignment.resize(config_.eta.size());
    for (const auto& block : locked_)
        for (std::size_t p = 0; p < block.sets.size(); ++p)
            tv.assignment[block.sets[p]] = block.representatives[p];
    return tv;
}

std::vector<int> FixerEngine::digest() const {
    std::vector<int> key = active_;
    key.push_back(-2);
    for (const auto& block : locked_) {
        for (std::size_t p = 0; p < block.sets.size(); ++p) {
            key.push_back(block.sets[p]);
            for (int r : block.representatives[p]) key.push_back(r);
            key.push_back(-3);
        }
        key.push_back(-4);
    }
    key.push_back(-5);
    for (int x = 0; x < static_cast<int>(pot_available_.size()); ++x)
        if (pot_available_[x]) key.push_back(x);
    return key;
}

void FixerEngine::lock_once(const GameState& state) {
    std::vector<std::vector<int>> adj;
    std::vector<int> eta_local;
    for (int i : active_) {
        adj.push_back(state.family().set(i));
        eta_local.push_back(config_.eta.at(i));
    }
    Bipartite g(static_cast<int>(active_.size()), config_.pot.size(), std::move(adj));
    SpannerSubgraph h = spanner(g, eta_local);
    if (h.covered_left.empty())
        throw std::logic_error("fixer engine: spanner covered no set");
    LockedBlock block;
    for (std::size_t p = 0; p < h.covered_left.size(); ++p) {
        block.sets.push_back(active_[h.covered_left[p]]);
        block.representatives.push_back(h.matched[p]);
    }
    for (int y : h.covered_right) {
        if (!pot_available_[y])
            throw std::logic_error("fixer engine: spanner reused a removed pot element");
        pot_available_[y] = 0;
    }
    std::vector<int> remaining;
    std::size_t p = 0;
    for (int idx = 0; idx < static_cast<int>(active_.size()); ++idx) {
        if (p < h.covered_left.size() && h.covered_left[p] == idx) {
            ++p;
            continue;
        }
        remaining.push_back(active_[idx]);
    }
    active_ = std::move(remaining);
    locked_.push_back(std::move(block));
}

FixerAction FixerEngine::next(const GameState& state) {
    if (state.pending_fixer())
        throw std::invalid_argument("fixer engine asked to move mid-round");
    check_locks(state);
    while (true) {
        if (active_.empty()) {
            if (!is_valid_eta_transversal(assembled(), state.family(), config_.eta))
                throw std::logic_error("fixer engine: assembled transversal invalid");
            return DeclareWin{};
        }
        std::vector<int> uni = state.family().union_of(active_);
        for (int x : uni)
            if (!pot_available_[x])
                throw std::logic_error("fixer engine: active set escaped the reduced pot");
        if (static_cast<int>(uni.size()) >= config_.eta.total(active_)) {
            lock_once(state);
            continue;
        }
        // Deficient union: swap a fresh element in for one of degree >= t+2.
        std::vector<int> deg(config_.pot.size(), 0);
        for (int i : active_)
            for (int e : state.family().set(i)) ++deg[e];
        int fresh = -1;
        for (int e = 0; e < config_.pot.size(); ++e)
            if (pot_available_[e] && deg[e] == 0) {
                fresh = e;
                break;
            }
        if (fresh == -1)
            throw std::logic_error("fixer engine: no fresh pot element available");
        int target = -1;
        for (int e = 0; e < config_.pot.size(); ++e)
            if (deg[e] >= config_.t + 2 && (target == -1 || deg[e] > deg[target]))
                target = e;
        if (target == -1) {
            std::vector<int> refutation;
            if (static_cast<int>(active_.size()) <= kWitnessSearchCap)
                if (auto w = deficiency_witness(state.family(), active_, config_.t, config_.eta))
                    refutation = w->subset;
            throw ConditionError(
                "condition fails: active family is deficient with no element of degree t+2",
                std::move(refutation));
        }
        for (int i : active_)
            if (state.family().contains(i, target))
                return FixerMove{i, fresh, target};
        throw std::logic_error("fixer engine: degree bookkeeping out of sync");
    }
}

// ---------------------------------------------------------------------------
// Breaker engine

bool deficiency_invariant_holds(const SetFamily& family, std::span<const int> witness,
                                int t, const Demand& eta) {
    SubsetStats s = evaluate_subset(family, witness, t, eta);
    return s.union_size < s.demand_sum - s.t_value;
}

BreakerMove necessity_reply(const SetFamily& before, const SetFamily& after,
                            std::span<const int> witness, const FixerMove& last, int t) {
    const int i = last.set_index;
    const int x = last.insert;
    const int y = last.remove;
    if (std::find(witness.begin(), witness.end(), i) == witness.end())
        return {}; // Fixer played outside the witness: do nothing.

    if (degree(before, witness, x) > 0) {
        if (t_value(after, witness, t) == t_value(before, witness, t))
            return {}; // union did not grow and the t-value is unchanged
        const int dx = degree(after, witness, x);
        const int dy = degree(after, witness, y);
        if (dy == dx - 1)
            throw std::logic_error("necessity reply: impossible degree configuration");
        if (dy < dx - 1) {
            // Restore the status quo: one y-for-x swap outside Fixer's set.
            for (int j : witness) {
                if (j == i) continue;
                if (after.contains(j, x) && !after.contains(j, y))
                    return BreakerMove{{{j, SwapDir::insert_y_remove_x}}};
            }
            throw ProofGapError("proof-gap encountered: no witness set holds x without y");
        }
        const int want = std::min(t, dy + 1 - dx);
        BreakerMove m;
        for (int j : witness) {
            if (static_cast<int>(m.swaps.size()) == want) break;
            if (j == i) continue;
            if (after.contains(j, y) && !after.contains(j, x))
                m.swaps.push_back({j, SwapDir::insert_x_remove_y});
        }
        if (static_cast<int>(m.swaps.size()) != want)
            throw ProofGapError("proof-gap encountered: fewer than min{t, d(y)+1-d(x)} "
                                "witness sets hold y without x");
        return m;
    }

    // x was fresh in the witness: push it over y in min{t, d(y)} sets.
    const int want = std::min(t, degree(after, witness, y));
    BreakerMove m;
    for (int j : witness) {
        if (static_cast<int>(m.swaps.size()) == want) break;
        if (j == i) continue;
        if (after.contains(j, y) && !after.contains(j, x))
            m.swaps.push_back({j, SwapDir::insert_x_remove_y});
    }
    if (static_cast<int>(m.swaps.size()) != want)
        throw ProofGapError("proof-gap encountered: fewer than min{t, d(y)} witness sets "
                            "hold y without x");
    return m;
}

BreakerEngine::BreakerEngine(const GameState& initial) : config_(initial.config()) {
    if (auto w = deficiency_witness(initial.family(), config_.t, config_.eta))
        witness_ = w->subset;
}

BreakerMove BreakerEngine::next(const GameState& after_fixer, const FixerMove& last) {
    if (!witness_) return {}; // Fixer-winning start: no strategy exists, pass.
    SetFamily before =
        after_fixer.family().with_swap(last.set_index, last.remove, last.insert);
    if (!deficiency_invariant_holds(before, *witness_, config_.t, config_.eta))
        throw std::logic_error("breaker engine: witness invariant broken before Fixer's move");
    try {
        return necessity_reply(before, after_fixer.family(), *witness_, last, config_.t);
    } catch (const ProofGapError&) {
        ++gap_count_;
        if (!attractor_)
            attractor_ = std::make_shared<Attractor>(
                Attractor::build(after_fixer.family(), config_));
        for (const BreakerMove& reply :
             legal_breaker_moves(after_fixer.family(), last, config_.t)) {
            SetFamily result = family_after_breaker(after_fixer.family(), last, reply);
            if (attractor_->fixer_wins(result)) continue;
            auto w = deficiency_witness(result, config_.t, config_.eta);
            if (!w)
                throw std::logic_error("breaker engine: fallback state lacks a witness");
            witness_ = w->subset;
            return reply;
        }
        throw std::logic_error("breaker engine: no reply escapes the Fixer attractor");
    }
}

// ---------------------------------------------------------------------------
// Exact solver

std::vector<int> Attractor::key_of(const SetFamily& family) const {
    if (family.size() != static_cast<int>(eta_.size()) || family.pot_size() != pot_size_)
        throw std::invalid_argument("family does not match the solved instance");
    std::vector<std::vector<int>> parts(family.size());
    for (int i = 0; i < family.size(); ++i) {
        parts[i].push_back(eta_[i]);
        for (int x : family.set(i)) parts[i].push_back(x);
    }
    std::sort(parts.begin(), parts.end());
    std::vector<int> key;
    for (const auto& p : parts) {
        key.insert(key.end(), p.begin(), p.end());
        key.push_back(-1);
    }
    return key;
}

Attractor Attractor::build(const SetFamily& family, const GameConfig& config) {
    if (config.eta.size() != family.size())
        throw std::invalid_argument("demand size does not match family size");
    if (family.pot_size() != config.pot.size())
        throw std::invalid_argument("family pot size does not match config pot");
    if (config.t < 1) throw std::invalid_argument("t must be at least 1");
    const int pot = family.pot_size();
    if (pot > kSolverMaxPot || family.size() > kSolverMaxSets)
        throw GuardError("exact solver guard: needs pot <= " + std::to_string(kSolverMaxPot) +
                         " and |S| <= " + std::to_string(kSolverMaxSets));
    long count = 1;
    for (int i = 0; i < family.size(); ++i) {
        count *= binom(pot, static_cast<int>(family.set(i).size()));
        if (count > kSolverMaxStates)
            throw GuardError("exact solver guard: state space exceeds " +
                             std::to_string(kSolverMaxStates));
    }

    Attractor a;
    a.t_ = config.t;
    a.pot_size_ = pot;
    a.eta_ = config.eta.values();

    // Enumerate every family with the same per-index set sizes.
    std::map<int, std::vector<std::vector<int>>> combos_by_size;
    for (int i = 0; i < family.size(); ++i) {
        int sz = static_cast<int>(family.set(i).size());
        if (!combos_by_size.count(sz)) combos_by_size[sz] = combinations(pot, sz);
    }
    std::vector<std::vector<std::vector<int>>> unresolved;
    std::vector<std::vector<int>> current(family.size());
    auto enumerate = [&](auto&& self, int i) -> void {
        if (i == family.size()) {
            SetFamily f(pot, current);
            std::vector<int> key = a.key_of(f);
            if (a.levels_.count(key)) return;
            bool won = find_eta_transversal(f, config.eta).has_value();
            a.levels_[key] = won ? 0 : -1;
            if (!won) unresolved.push_back(current);
            return;
        }
        for (const auto& combo : combos_by_size[static_cast<int>(family.set(i).size())]) {
            current[i] = combo;
            self(self, i + 1);
        }
    };
    enumerate(enumerate, 0);

    // Layered least fixed point: a state enters at layer L when some Fixer
    // move sends every Breaker reply into layers < L.
    int layer = 0;
    while (!unresolved.empty()) {
        ++layer;
        std::vector<std::vector<std::vector<int>>> still;
        std::vector<std::vector<int>> newly;
        for (const auto& sets : unresolved) {
            SetFamily f(pot, sets);
            bool resolved = false;
            for (const FixerMove& m : legal_fixer_moves(f, pot)) {
                SetFamily after = f.with_swap(m.set_index, m.insert, m.remove);
                bool all_win = true;
                for (const BreakerMove& reply : legal_breaker_moves(after, m, a.t_)) {
                    int lv = a.levels_.at(a.key_of(family_after_breaker(after, m, reply)));
                    if (lv < 0 || lv >= layer) {
                        all_win = false;
                        break;
                    }
                }
                if (all_win) {
                    resolved = true;
                    break;
                }
            }
            if (resolved)
                newly.push_back(a.key_of(SetFamily(pot, sets)));
            else
                still.push_back(sets);
        }
        if (newly.empty()) break;
        for (auto& key : newly) a.levels_[key] = layer;
        unresolved = std::move(still);
    }
    return a;
}

bool Attractor::fixer_wins(const SetFamily& family) const { return level(family) >= 0; }

int Attractor::level(const SetFamily& family) const {
    auto it = levels_.find(key_of(family));
    if (it == levels_.end())
        throw std::invalid_argument("family outside the solved state space");
    return it->second;
}

SolveResult exact_solve(const SetFamily& family, const GameConfig& config) {
    Attractor a = Attractor::build(family, config);
    SolveResult r;
    r.states_explored = a.states();
    const int lv = a.level(family);
    if (lv < 0) return r;
    r.winner = Player::Fixer;
    r.rounds_to_win = lv;
    if (lv > 0) {
        int best_worst = INT_MAX;
        for (const FixerMove& m : legal_fixer_moves(family, family.pot_size())) {
            SetFamily after = family.with_swap(m.set_index, m.insert, m.remove);
            int worst = 0;
            bool all_win = true;
            for (const BreakerMove& reply : legal_breaker_moves(after, m, config.t)) {
                int l2 = a.level(family_after_breaker(after, m, reply));
                if (l2 < 0) {
                    all_win = false;
                    break;
                }
                worst = std::max(worst, l2);
            }
            if (all_win && worst < best_worst) {
                best_worst = worst;
                r.first_move = m;
            }
        }
    }
    return r;
}

FixerAgent fixer_engine_agent(const GameState& initial) {
    auto engine = std::make_shared<FixerEngine>(initial);
    return [engine](const GameState& s) { return engine->next(s); };
}

BreakerAgent breaker_engine_agent(const GameState& initial) {
    auto engine = std::make_shared<BreakerEngine>(initial);
    return [engine](const GameState& s, const FixerMove& last) { return engine->next(s, last); };
}

// ---------------------------------------------------------------------------
// Strategy verification driver

namespace {

struct ExhaustContext {
    int round_limit = 0;
    std::set<std::vector<int>> memo;
    VerifyReport* report = nullptr;
};

bool exhaust_fixer(const GameState& state, FixerEngine engine, int depth,
                   ExhaustContext& ctx) {
    if (is_won(state)) {
        ctx.report->max_fixer_rounds = std::max(ctx.report->max_fixer_rounds, depth);
        return true;
    }
    if (depth >= ctx.round_limit) {
        ctx.report->failures.push_back("fixer engine exceeded the |S|*|P| round bound on " +
                                       describe_family(state.family()));
        return false;
    }
    std::vector<int> key = family_digest(state.family());
    key.push_back(-9);
    auto dg = engine.digest();
    key.insert(key.end(), dg.begin(), dg.end());
    if (ctx.memo.count(key)) return true;

    const int active_before = static_cast<int>(engine.active().size());
    const int union_before =
        static_cast<int>(state.family().union_of(engine.active()).size());
    FixerAction action;
    try {
        action = engine.next(state);
    } catch (const ConditionError& e) {
        ctx.report->failures.push_back(std::string("fixer engine refused a winning position: ") +
                                       e.what() + " on " + describe_family(state.family()));
        return false;
    }
    if (std::holds_alternative<DeclareWin>(action)) {
        if (!is_valid_eta_transversal(engine.assembled(), state.family(),
                                      state.config().eta)) {
            ctx.report->failures.push_back("fixer engine declared a win without a valid "
                                           "transversal on " + describe_family(state.family()));
            return false;
        }
        ctx.report->max_fixer_rounds = std::max(ctx.report->max_fixer_rounds, depth);
        ctx.memo.insert(key);
        return true;
    }
    const FixerMove move = std::get<FixerMove>(action);
    GameState mid = apply_fixer(state, move);
    bool all_ok = true;
    for (const BreakerMove& reply : legal_breaker_moves(mid, move)) {
        GameState next = apply_breaker(mid, reply);
        engine.check_locks(next);
        const int active_after = static_cast<int>(engine.active().size());
        const int union_after =
            static_cast<int>(next.family().union_of(engine.active()).size());
        if (!(active_after < active_before || union_after > union_before)) {
            ctx.report->failures.push_back("fixer engine round made no progress on " +
                                           describe_family(state.family()));
            all_ok = false;
            continue;
        }
        if (!exhaust_fixer(next, engine, depth + 1, ctx)) all_ok = false;
    }
    if (all_ok) ctx.memo.insert(key);
    return all_ok;
}

void exhaust_breaker(const GameState& state, const BreakerEngine& engine, int depth,
                     int horizon, std::set<std::vector<int>>& memo, VerifyReport& report) {
    const auto& witness = engine.witness();
    if (!witness ||
        !deficiency_invariant_holds(state.family(), *witness, state.config().t,
                                    state.config().eta)) {
        report.failures.push_back("breaker witness invariant violated on " +
                                  describe_family(state.family()));
        return;
    }
    if (depth >= horizon) return;
    std::vector<int> key = family_digest(state.family());
    key.push_back(-9);
    key.insert(key.end(), witness->begin(), witness->end());
    if (memo.count(key)) return;
    memo.insert(key);
    for (const FixerMove& move : legal_fixer_moves(state)) {
        GameState mid = apply_fixer(state, move);
        BreakerEngine next_engine = engine;
        BreakerMove reply;
        try {
            reply = next_engine.next(mid, move);
        } catch (const std::runtime_error& e) {
            report.failures.push_back(std::string("breaker engine failed: ") + e.what() +
                                      " on " + describe_family(state.family()));
            continue;
        }
        report.proof_gaps += next_engine.proof_gap_count() - engine.proof_gap_count();
        GameState next = apply_breaker(mid, reply);
        exhaust_breaker(next, next_engine, depth + 1, horizon, memo, report);
    }
}

} // namespace

VerifyReport verify_strategy_pair(std::span<const VerifyInstance> instances,
                                  int losing_horizon) {
    VerifyReport report;
    for (const VerifyInstance& inst : instances) {
        ++report.instances;
        const bool cond = condition_holds(inst.family, inst.config.t, inst.config.eta);
        SolveResult solved = exact_solve(inst.family, inst.config);
        if (cond != (solved.winner == Player::Fixer)) {
            ++report.mismatches;
            report.failures.push_back("condition and exact solver disagree on " +
                                      describe_family(inst.family));
            continue;
        }
        GameState initial(inst.config, inst.family);
        if (cond) {
            ++report.fixer_wins;
            ExhaustContext ctx;
            ctx.round_limit = inst.family.size() * inst.config.pot.size();
            ctx.report = &report;
            exhaust_fixer(initial, FixerEngine(initial), 0, ctx);
        } else {
            ++report.breaker_wins;
            std::set<std::vector<int>> memo;
            exhaust_breaker(initial, BreakerEngine(initial), 0, losing_horizon, memo, report);
        }
    }
    return report;
}

} // namespace fixbreak
