#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fixbreak/core.hpp"

namespace fixbreak {

/// Bipartite graph with `left` and `right` vertex counts and per-left-vertex
/// sorted right-neighbor lists.
class Bipartite {
public:
    Bipartite(int left, int right, std::vector<std::vector<int>> adj);

    int left() const { return left_; }
    int right() const { return right_; }
    const std::vector<int>& adjacent(int u) const;

private:
    int left_ = 0;
    int right_ = 0;
    std::vector<std::vector<int>> adj_;
};

/// Injective representative choice: assignment[i] is set i's element.
struct Transversal {
    std::vector<int> assignment;
};

/// Disjoint representative sets of sizes eta(i): assignment[i] is sorted.
struct EtaTransversal {
    std::vector<std::vector<int>> assignment;
};

/// Subgraph H of a bipartite graph with d_H(x) = eta(x) on covered left
/// vertices, d_H(y) = 1 on covered right vertices, and every neighbor of a
/// covered right vertex covered on the left.
struct SpannerSubgraph {
    std::vector<int> covered_left;              // sorted left vertices
    std::vector<std::vector<int>> matched;      // per covered left: its eta(x) rights
    std::vector<int> covered_right;             // sorted right vertices
};

/// Maximum-cardinality matching, augmenting-path based; vertices are scanned
/// in index order so the result is deterministic. Returns left -> right
/// (-1 for unmatched).
std::vector<int> max_matching(const Bipartite& g);

/// A transversal iff one exists (maximum matching saturates every set).
std::optional<Transversal> find_transversal(const SetFamily& family);

/// Replicates each set eta(i) times, matches, and regroups. Returns an
/// eta-transversal iff one exists.
std::optional<EtaTransversal> find_eta_transversal(const SetFamily& family,
                                                   const Demand& eta);

bool is_valid_eta_transversal(const EtaTransversal& tv, const SetFamily& family,
                              const Demand& eta);

/// Requires |N(X)| >= sum eta(x). Finds a tight right set C together with a
/// perfect matching between C and N(C) in the copy-expanded graph, then
/// regroups copies into the subgraph H. Output invariants are re-checked on
/// every call.
SpannerSubgraph spanner(const Bipartite& g, std::span<const int> eta);

} // namespace fixbreak
