#include "fixbreak/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fixbreak/errors.hpp"

namespace fixbreak {

namespace {

constexpr int kMaxWitnessSets = 24;

void check_subset(const SetFamily& family, std::span<const int> subset) {
    std::vector<char> seen(family.size(), 0);
    for (int i : subset) {
        if (i < 0 || i >= family.size())
            throw std::invalid_argument("set index " + std::to_string(i) + " out of range");
        if (seen[i])
            throw std::invalid_argument("duplicate set index " + std::to_string(i));
        seen[i] = 1;
    }
}

} // namespace

Pot::Pot(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("pot must contain at least one element");
    std::set<std::string_view> seen;
    for (const auto& n : names_)
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate element name '" + n + "' in pot");
}

const std::string& Pot::name(int id) const {
    if (id < 0 || id >= size()) throw std::invalid_argument("element id out of range");
    return names_[id];
}

std::optional<int> Pot::find(std::string_view name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

SetFamily::SetFamily(int pot_size, std::vector<std::vector<int>> sets)
    : pot_size_(pot_size), sets_(std::move(sets)) {
    if (pot_size_ < 1) throw std::invalid_argument("pot size must be positive");
    for (auto& s : sets_) {
        std::sort(s.begin(), s.end());
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j] < 0 || s[j] >= pot_size_)
                throw std::invalid_argument("set element id out of pot range");
            if (j > 0 && s[j] == s[j - 1])
                throw std::invalid_argument("duplicate element within one set");
        }
    }
}

const std::vector<int>& SetFamily::set(int i) const {
    if (i < 0 || i >= size()) throw std::invalid_argument("set index out of range");
    return sets_[i];
}

bool SetFamily::contains(int i, int x) const {
    const auto& s = set(i);
    return std::binary_search(s.begin(), s.end(), x);
}

SetFamily SetFamily::with_swap(int i, int insert, int remove) const {
    if (insert < 0 || insert >= pot_size_ || remove < 0 || remove >= pot_size_)
        throw std::invalid_argument("swap element id out of pot range");
    if (contains(i, insert)) throw std::invalid_argument("inserted element already in set");
    if (!contains(i, remove)) throw std::invalid_argument("removed element not in set");
    SetFamily next = *this;
    auto& s = next.sets_[i];
    s.erase(std::find(s.begin(), s.end(), remove));
    s.insert(std::upper_bound(s.begin(), s.end(), insert), insert);
    return next;
}

std::vector<int> SetFamily::union_of() const {
    std::vector<int> all(size());
    std::iota(all.begin(), all.end(), 0);
    return union_of(all);
}

std::vector<int> SetFamily::union_of(std::span<const int> subset) const {
    std::vector<char> present(pot_size_, 0);
    for (int i : subset)
        for (int x : set(i)) present[x] = 1;
    std::vector<int> out;
    for (int x = 0; x < pot_size_; ++x)
        if (present[x]) out.push_back(x);
    return out;
}

Demand::Demand(std::vector<int> eta) : eta_(std::move(eta)) {
    for (int v : eta_)
        if (v < 1) throw std::invalid_argument("demand values must be at least 1");
}

Demand Demand::uniform(int n, int value) {
    if (n < 0) throw std::invalid_argument("demand size must be nonnegative");
    return Demand(std::vector<int>(n, value));
}

int Demand::at(int i) const {
    if (i < 0 || i >= size()) throw std::invalid_argument("demand index out of range");
    return eta_[i];
}

int Demand::total() const { return std::accumulate(eta_.begin(), eta_.end(), 0); }

int Demand::total(std::span<const int> subset) const {
    int sum = 0;
    for (int i : subset) sum += at(i);
    return sum;
}

int degree(const SetFamily& family, std::span<const int> subset, int x) {
    check_subset(family, subset);
    if (x < 0 || x >= family.pot_size())
        throw std::invalid_argument("element id out of pot range");
    int d = 0;
    for (int i : subset)
        if (family.contains(i, x)) ++d;
    return d;
}

int t_value(const SetFamily& family, std::span<const int> subset, int t) {
    return evaluate_subset(family, subset, t, Demand::uniform(family.size())).t_value;
}

SubsetStats evaluate_subset(const SetFamily& family, std::span<const int> subset,
                            int t, const Demand& eta) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    if (eta.size() != family.size())
        throw std::invalid_argument("demand size does not match family size");
    check_subset(family, subset);
    std::vector<int> deg(family.pot_size(), 0);
    std::vector<int> touched;
    SubsetStats stats;
    for (int i : subset) {
        stats.demand_sum += eta.at(i);
        for (int x : family.set(i)) {
            if (deg[x]++ == 0) touched.push_back(x);
        }
    }
    stats.union_size = static_cast<int>(touched.size());
    for (int x : touched) stats.t_value += (deg[x] - 1) / (t + 1);
    return stats;
}

std::optional<DeficiencyWitness> deficiency_witness(const SetFamily& family, int t,
                                                    const Demand& eta) {
    std::vector<int> all(family.size());
    std::iota(all.begin(), all.end(), 0);
    return deficiency_witness(family, all, t, eta);
}

std::optional<DeficiencyWitness> deficiency_witness(const SetFamily& family,
                                                    std::span<const int> universe,
                                                    int t, const Demand& eta) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    if (eta.size() != family.size())
        throw std::invalid_argument("demand size does not match family size");
    check_subset(family, universe);
    const int n = static_cast<int>(universe.size());
    if (n > kMaxWitnessSets)
        throw GuardError("deficiency witness search is exhaustive; refusing more than " +
                         std::to_string(kMaxWitnessSets) + " sets (got " +
                         std::to_string(n) + ")");
    std::vector<int> sorted(universe.begin(), universe.end());
    std::sort(sorted.begin(), sorted.end());

    // Cardinality-ascending, lexicographic combination order: the first hit
    // is the smallest witness with the smallest index list.
    std::vector<int> pick;
    for (int k = 1; k <= n; ++k) {
        pick.resize(k);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<int> subset(k);
            for (int j = 0; j < k; ++j) subset[j] = sorted[pick[j]];
            SubsetStats s = evaluate_subset(family, subset, t, eta);
            if (s.union_size < s.demand_sum - s.t_value)
                return DeficiencyWitness{subset, s.union_size, s.demand_sum, s.t_value};
            int j = k - 1;
            while (j >= 0 && pick[j] == n - k + j) --j;
            if (j < 0) break;
            ++pick[j];
            for (int l = j + 1; l < k; ++l) pick[l] = pick[l - 1] + 1;
        }
    }
    return std::nullopt;
}

bool condition_holds(const SetFamily& family, int t, const Demand& eta) {
    return !deficiency_witness(family, t, eta).has_value();
}

} // namespace fixbreak
