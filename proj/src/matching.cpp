#include "fixbreak/matching.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "fixbreak/errors.hpp"

namespace fixbreak {

Bipartite::Bipartite(int left, int right, std::vector<std::vector<int>> adj)
    : left_(left), right_(right), adj_(std::move(adj)) {
    if (left_ < 0 || right_ < 0) throw std::invalid_argument("negative part size");
    if (static_cast<int>(adj_.size()) != left_)
        throw std::invalid_argument("adjacency size does not match left part");
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
            if (nbrs[j] < 0 || nbrs[j] >= right_)
                throw std::invalid_argument("right vertex out of range");
            if (j > 0 && nbrs[j] == nbrs[j - 1])
                throw std::invalid_argument("duplicate edge in bipartite graph");
        }
    }
}

const std::vector<int>& Bipartite::adjacent(int u) const {
    if (u < 0 || u >= left_) throw std::invalid_argument("left vertex out of range");
    return adj_[u];
}

std::vector<int> max_matching(const Bipartite& g) {
    std::vector<int> match_left(g.left(), -1), match_right(g.right(), -1);
    std::vector<char> visited(g.right(), 0);
    std::function<bool(int)> augment = [&](int u) {
        for (int v : g.adjacent(u)) {
            if (visited[v]) continue;
            visited[v] = 1;
            if (match_right[v] == -1 || augment(match_right[v])) {
                match_right[v] = u;
                match_left[u] = v;
                return true;
            }
        }
        return false;
    };
    for (int u = 0; u < g.left(); ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        augment(u);
    }
    return match_left;
}

std::optional<Transversal> find_transversal(const SetFamily& family) {
    Bipartite g(family.size(), family.pot_size(), family.sets());
    std::vector<int> match = max_matching(g);
    for (int m : match)
        if (m == -1) return std::nullopt;
    return Transversal{std::move(match)};
}

std::optional<EtaTransversal> find_eta_transversal(const SetFamily& family,
                                                   const Demand& eta) {
    if (eta.size() != family.size())
        throw std::invalid_argument("demand size does not match family size");
    std::vector<std::vector<int>> adj;
    std::vector<int> owner;
    for (int i = 0; i < family.size(); ++i)
        for (int c = 0; c < eta.at(i); ++c) {
            adj.push_back(family.set(i));
            owner.push_back(i);
        }
    Bipartite blown(static_cast<int>(adj.size()), family.pot_size(), std::move(adj));
    std::vector<int> match = max_matching(blown);
    EtaTransversal tv;
    tv.assignment.resize(family.size());
    for (std::size_t z = 0; z < match.size(); ++z) {
        if (match[z] == -1) return std::nullopt;
        tv.assignment[owner[z]].push_back(match[z]);
    }
    for (auto& reps : tv.assignment) std::sort(reps.begin(), reps.end());
    return tv;
}

bool is_valid_eta_transversal(const EtaTransversal& tv, const SetFamily& family,
                              const Demand& eta) {
    if (static_cast<int>(tv.assignment.size()) != family.size()) return false;
    std::vector<char> used(family.pot_size(), 0);
    for (int i = 0; i < family.size(); ++i) {
        const auto& reps = tv.assignment[i];
        if (static_cast<int>(reps.size()) != eta.at(i)) return false;
        for (int x : reps) {
            if (x < 0 || x >= family.pot_size() || !family.contains(i, x)) return false;
            if (used[x]) return false;
            used[x] = 1;
        }
    }
    return true;
}

namespace {

void validate_spanner(const Bipartite& g, std::span<const int> eta,
                      const SpannerSubgraph& h) {
    std::vector<char> covered_left(g.left(), 0), covered_right(g.right(), 0);
    for (int y : h.covered_right) covered_right[y] = 1;
    std::vector<int> right_degree(g.right(), 0);
    if (h.matched.size() != h.covered_left.size())
        throw std::logic_error("spanner: matched blocks misaligned");
    for (std::size_t p = 0; p < h.covered_left.size(); ++p) {
        int x = h.covered_left[p];
        covered_left[x] = 1;
        if (static_cast<int>(h.matched[p].size()) != eta[x])
            throw std::logic_error("spanner: covered left degree != eta");
        for (int y : h.matched[p]) {
            if (!covered_right[y]) throw std::logic_error("spanner: edge leaves covered rights");
            if (!std::binary_search(g.adjacent(x).begin(), g.adjacent(x).end(), y))
                throw std::logic_error("spanner: matched pair is not an edge");
            ++right_degree[y];
        }
    }
    for (int y : h.covered_right)
        if (right_degree[y] != 1) throw std::logic_error("spanner: covered right degree != 1");
    // Closure: neighbors of covered rights are covered lefts.
    for (int x = 0; x < g.left(); ++x)
        for (int y : g.adjacent(x))
            if (covered_right[y] && !covered_left[x])
                throw std::logic_error("spanner: covered right has an uncovered neighbor");
}

} // namespace

SpannerSubgraph spanner(const Bipartite& g, std::span<const int> eta) {
    if (static_cast<int>(eta.size()) != g.left())
        throw std::invalid_argument("eta size does not match left part");
    int demand = 0;
    for (int v : eta) {
        if (v < 1) throw std::invalid_argument("eta values must be at least 1");
        demand += v;
    }
    std::vector<char> nonisolated(g.right(), 0);
    int neighborhood = 0;
    for (int x = 0; x < g.left(); ++x)
        for (int y : g.adjacent(x))
            if (!nonisolated[y]) {
                nonisolated[y] = 1;
                ++neighborhood;
            }
    if (neighborhood < demand)
        throw std::invalid_argument("spanner hypothesis violated: |N(X)| = " +
                                    std::to_string(neighborhood) + " < " +
                                    std::to_string(demand) + " = total demand");

    // Copy-expand the left side: eta(x) identical copies of each x.
    std::vector<int> owner;
    std::vector<std::vector<int>> copy_adj;
    for (int x = 0; x < g.left(); ++x)
        for (int c = 0; c < eta[x]; ++c) {
            owner.push_back(x);
            copy_adj.push_back(g.adjacent(x));
        }
    Bipartite blown(static_cast<int>(owner.size()), g.right(), std::move(copy_adj));
    std::vector<int> match_copy = max_matching(blown);
    std::vector<int> match_right(g.right(), -1);
    for (std::size_t z = 0; z < match_copy.size(); ++z)
        if (match_copy[z] != -1) match_right[match_copy[z]] = static_cast<int>(z);

    // Tight right set C with a perfect matching onto N(C). With a free right
    // vertex, alternating reachability from the free rights yields it as the
    // matched part of the reachable rights; otherwise the matching is perfect
    // on both sides and all of N(X) is tight.
    std::vector<char> in_c(g.right(), 0);
    bool any_free = false;
    for (int y = 0; y < g.right(); ++y)
        if (nonisolated[y] && match_right[y] == -1) any_free = true;
    if (any_free) {
        std::vector<char> seen_right(g.right(), 0), seen_copy(owner.size(), 0);
        std::vector<int> queue;
        for (int y = 0; y < g.right(); ++y)
            if (nonisolated[y] && match_right[y] == -1) {
                seen_right[y] = 1;
                queue.push_back(y);
            }
        std::vector<std::vector<int>> copies_of(g.left());
        for (std::size_t z = 0; z < owner.size(); ++z)
            copies_of[owner[z]].push_back(static_cast<int>(z));
        std::vector<std::vector<int>> right_owners(g.right());
        for (int x = 0; x < g.left(); ++x)
            for (int y : g.adjacent(x)) right_owners[y].push_back(x);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int y = queue[qi];
            for (int x : right_owners[y])
                for (int z : copies_of[x]) {
                    if (seen_copy[z]) continue;
                    seen_copy[z] = 1;
                    if (match_copy[z] == -1)
                        throw std::logic_error("spanner: augmenting path past a maximum matching");
                    int y2 = match_copy[z];
                    if (!seen_right[y2]) {
                        seen_right[y2] = 1;
                        queue.push_back(y2);
                    }
                }
        }
        for (int y = 0; y < g.right(); ++y)
            if (seen_right[y] && match_right[y] != -1) in_c[y] = 1;
    } else {
        for (int y = 0; y < g.right(); ++y)
            if (nonisolated[y]) in_c[y] = 1;
    }

    // Regroup copies: x is covered iff its copies are matched into C, and
    // identical neighborhoods make that an all-or-nothing property.
    std::vector<std::vector<int>> reps(g.left());
    for (int y = 0; y < g.right(); ++y)
        if (in_c[y]) {
            if (match_right[y] == -1) throw std::logic_error("spanner: unmatched tight vertex");
            reps[owner[match_right[y]]].push_back(y);
        }
    SpannerSubgraph h;
    for (int y = 0; y < g.right(); ++y)
        if (in_c[y]) h.covered_right.push_back(y);
    for (int x = 0; x < g.left(); ++x) {
        if (reps[x].empty()) continue;
        if (static_cast<int>(reps[x].size()) != eta[x])
            throw std::logic_error("spanner: copies of one vertex split across the tight set");
        std::sort(reps[x].begin(), reps[x].end());
        h.covered_left.push_back(x);
        h.matched.push_back(std::move(reps[x]));
    }
    validate_spanner(g, eta, h);
    return h;
}

} // namespace fixbreak
