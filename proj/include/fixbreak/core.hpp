#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fixbreak {

/// Interned element universe. Ids are dense 0..|P|-1 and bijective with
/// display names; everything downstream works on ids.
class Pot {
public:
    explicit Pot(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int id) const;
    std::optional<int> find(std::string_view name) const;
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const Pot&) const = default;

private:
    std::vector<std::string> names_;
};

/// Indexed family of element sets over a pot of a given size. The index is
/// the set's identity: two distinct indices may hold equal sets. Sets are
/// stored as strictly increasing id lists.
class SetFamily {
public:
    SetFamily() = default;
    SetFamily(int pot_size, std::vector<std::vector<int>> sets);

    int pot_size() const { return pot_size_; }
    int size() const { return static_cast<int>(sets_.size()); }
    const std::vector<int>& set(int i) const;
    const std::vector<std::vector<int>>& sets() const { return sets_; }
    bool contains(int i, int x) const;

    /// New family with element `insert` swapped in for `remove` in set i.
    SetFamily with_swap(int i, int insert, int remove) const;

    std::vector<int> union_of() const;
    std::vector<int> union_of(std::span<const int> subset) const;

    bool operator==(const SetFamily&) const = default;

private:
    int pot_size_ = 0;
    std::vector<std::vector<int>> sets_;
};

/// Per-set demand eta(i) >= 1. The plain transversal game is eta == 1.
class Demand {
public:
    Demand() = default;
    explicit Demand(std::vector<int> eta);
    static Demand uniform(int n, int value = 1);

    int size() const { return static_cast<int>(eta_.size()); }
    int at(int i) const;
    int total() const;
    int total(std::span<const int> subset) const;
    const std::vector<int>& values() const { return eta_; }

    bool operator==(const Demand&) const = default;

private:
    std::vector<int> eta_;
};

/// A sub-family refuting the winning condition: union smaller than demand
/// minus t-value, strictly.
struct DeficiencyWitness {
    std::vector<int> subset; // sorted set indices
    int union_size = 0;
    int demand_sum = 0;
    int t_value = 0;
};

struct SubsetStats {
    int union_size = 0;
    int demand_sum = 0;
    int t_value = 0;
};

/// Number of sets among `subset` containing x.
int degree(const SetFamily& family, std::span<const int> subset, int x);

/// t-value of the sub-family: sum over union elements of
/// floor((degree - 1) / (t + 1)). Zero for the empty subset.
int t_value(const SetFamily& family, std::span<const int> subset, int t);

/// Union size, demand sum and t-value of one sub-family in a single pass.
SubsetStats evaluate_subset(const SetFamily& family, std::span<const int> subset,
                            int t, const Demand& eta);

/// Exhaustive search over all sub-families for one violating
/// |union| < demand - t_value. Returns the witness of smallest cardinality,
/// ties broken by lexicographically smallest index list; nothing iff the
/// winning condition holds. Refuses families with more than 24 sets.
std::optional<DeficiencyWitness> deficiency_witness(const SetFamily& family, int t,
                                                    const Demand& eta);

/// Same search restricted to sub-families of `universe`.
std::optional<DeficiencyWitness> deficiency_witness(const SetFamily& family,
                                                    std::span<const int> universe,
                                                    int t, const Demand& eta);

/// True iff no deficiency witness exists, i.e. Fixer has a winning strategy
/// against Breaker_t in the eta-game.
bool condition_holds(const SetFamily& family, int t, const Demand& eta);

} // namespace fixbreak
