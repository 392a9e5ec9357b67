#include "fixbreak/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "fixbreak/errors.hpp"
#include "fixbreak/game.hpp"
#include "fixbreak/strategy.hpp"

namespace fixbreak {

namespace {

constexpr int kMaxExactEdges = 16;

} // namespace

Multigraph::Multigraph(int n, std::vector<std::pair<int, int>> edges, bool simple)
    : n_(n), edges_(std::move(edges)), simple_(simple) {
    if (n_ < 0) throw std::invalid_argument("negative vertex count");
    incident_.resize(n_);
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < edge_count(); ++e) {
        auto [u, v] = edges_[e];
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("loops are not allowed");
        if (simple_ && !seen.insert(std::minmax(u, v)).second)
            throw std::invalid_argument("repeated edge in a graph declared simple");
        incident_[u].push_back(e);
        incident_[v].push_back(e);
    }
}

std::pair<int, int> Multigraph::edge(int e) const {
    if (e < 0 || e >= edge_count()) throw std::invalid_argument("edge index out of range");
    return edges_[e];
}

int Multigraph::degree(int v) const { return static_cast<int>(incident(v).size()); }

int Multigraph::max_degree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

int Multigraph::multiplicity(int u, int v) const {
    int m = 0;
    for (int e : incident(u)) {
        auto [a, b] = edges_[e];
        if (a == v || b == v) ++m;
    }
    return m;
}

const std::vector<int>& Multigraph::incident(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
    return incident_[v];
}

std::vector<int> Multigraph::neighbors(int v) const {
    std::set<int> out;
    for (int e : incident(v)) {
        auto [a, b] = edges_[e];
        out.insert(a == v ? b : a);
    }
    return {out.begin(), out.end()};
}

Multigraph Multigraph::without_edge(int e) const {
    if (e < 0 || e >= edge_count()) throw std::invalid_argument("edge index out of range");
    std::vector<std::pair<int, int>> rest = edges_;
    rest.erase(rest.begin() + e);
    return Multigraph(n_, std::move(rest), simple_);
}

void check_proper(const Multigraph& g, const EdgeColoring& c, bool allow_uncolored) {
    if (static_cast<int>(c.color.size()) != g.edge_count())
        throw std::invalid_argument("coloring size does not match edge count");
    for (int e = 0; e < g.edge_count(); ++e) {
        if (c.color[e] == -1) {
            if (!allow_uncolored)
                throw std::invalid_argument("edge " + std::to_string(e) + " is uncolored");
            continue;
        }
        if (c.color[e] < 0 || c.color[e] >= c.k)
            throw std::invalid_argument("edge " + std::to_string(e) + " colored outside the palette");
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<char> used(c.k, 0);
        for (int e : g.incident(v)) {
            int col = c.color[e];
            if (col == -1) continue;
            if (used[col])
                throw std::invalid_argument("color " + std::to_string(col) +
                                            " repeated at vertex " + std::to_string(v));
            used[col] = 1;
        }
    }
}

std::vector<int> missing_colors(const Multigraph& g, const EdgeColoring& c, int v) {
    std::vector<char> used(c.k, 0);
    for (int e : g.incident(v))
        if (c.color[e] != -1) used[c.color[e]] = 1;
    std::vector<int> out;
    for (int col = 0; col < c.k; ++col)
        if (!used[col]) out.push_back(col);
    return out;
}

std::pair<EdgeColoring, int> kempe_swap(const Multigraph& g, const EdgeColoring& c,
                                        int v, int a, int b) {
    if (a == b || a < 0 || b < 0 || a >= c.k || b >= c.k)
        throw std::invalid_argument("kempe swap needs two distinct palette colors");
    check_proper(g, c, /*allow_uncolored=*/true);
    auto edge_with = [&](int at, int col) {
        for (int e : g.incident(at))
            if (c.color[e] == col) return e;
        return -1;
    };
    int has_a = edge_with(v, a), has_b = edge_with(v, b);
    if ((has_a == -1) == (has_b == -1))
        throw std::invalid_argument("kempe swap: exactly one of the two colors must be "
                                    "present at the start vertex");
    EdgeColoring out = c;
    int cur = v;
    int want = has_a != -1 ? a : b;
    int steps = 0;
    while (true) {
        int e = edge_with(cur, want);
        if (e == -1) break;
        out.color[e] = (c.color[e] == a) ? b : a;
        auto [p, q] = g.edge(e);
        cur = (p == cur) ? q : p;
        want = (want == a) ? b : a;
        if (++steps > g.edge_count())
            throw std::logic_error("kempe swap: walk exceeded edge count");
    }
    return {std::move(out), cur};
}

namespace {

bool extend_coloring(const Multigraph& g, int k, int e, std::vector<int>& color,
                     std::vector<unsigned>& used_at, int used_colors, bool prune_symmetry) {
    if (e == g.edge_count()) return true;
    auto [u, v] = g.edge(e);
    int limit = prune_symmetry ? std::min(k, used_colors + 1) : k;
    for (int col = 0; col < limit; ++col) {
        unsigned bit = 1u << col;
        if ((used_at[u] | used_at[v]) & bit) continue;
        color[e] = col;
        used_at[u] |= bit;
        used_at[v] |= bit;
        if (extend_coloring(g, k, e + 1, color, used_at,
                            std::max(used_colors, col + 1), prune_symmetry))
            return true;
        used_at[u] &= ~bit;
        used_at[v] &= ~bit;
        color[e] = -1;
    }
    return false;
}

std::optional<EdgeColoring> try_k_coloring(const Multigraph& g, int k, bool prune_symmetry) {
    if (k < 0 || k > 31) throw std::invalid_argument("palette size out of range");
    EdgeColoring c{k, std::vector<int>(g.edge_count(), -1)};
    std::vector<unsigned> used_at(g.vertex_count(), 0);
    if (!extend_coloring(g, k, 0, c.color, used_at, 0, prune_symmetry)) return std::nullopt;
    return c;
}

} // namespace

std::optional<EdgeColoring> find_k_coloring(const Multigraph& g, int k) {
    return try_k_coloring(g, k, /*prune_symmetry=*/false);
}

int chromatic_index(const Multigraph& g) {
    if (g.edge_count() > kMaxExactEdges)
        throw GuardError("exact chromatic index guard: more than " +
                         std::to_string(kMaxExactEdges) + " edge instances");
    if (g.edge_count() == 0) return 0;
    for (int k = g.max_degree();; ++k)
        if (try_k_coloring(g, k, /*prune_symmetry=*/true)) return k;
}

bool is_critical(const Multigraph& g, int e) {
    return chromatic_index(g.without_edge(e)) < chromatic_index(g);
}

// ---------------------------------------------------------------------------
// Vizing coloring via the transversal game

namespace {

std::vector<std::string> palette_names(int k) {
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) names.push_back(std::to_string(i));
    return names;
}

} // namespace

EdgeColoring vizing_color(const Multigraph& g) {
    if (!g.simple()) throw std::invalid_argument("vizing coloring requires a simple graph");
    const int palette = g.max_degree() + 1;
    EdgeColoring coloring{palette, std::vector<int>(g.edge_count(), -1)};
    if (g.edge_count() == 0) return coloring;

    // Peel a maximum-degree vertex at each step, then re-insert in reverse.
    std::vector<char> present(g.vertex_count(), 1);
    std::vector<int> live_degree(g.vertex_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) live_degree[v] = g.degree(v);
    std::vector<int> order;
    for (int step = 0; step < g.vertex_count(); ++step) {
        int pick = -1;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (present[v] && (pick == -1 || live_degree[v] > live_degree[pick])) pick = v;
        order.push_back(pick);
        present[pick] = 0;
        for (int e : g.incident(pick)) {
            auto [p, q] = g.edge(e);
            int other = (p == pick) ? q : p;
            if (present[other]) --live_degree[other];
        }
    }
    std::reverse(order.begin(), order.end());

    std::fill(present.begin(), present.end(), 0);
    for (int v : order) {
        present[v] = 1;
        std::vector<int> nbrs;
        std::vector<int> nbr_edge;
        for (int e : g.incident(v)) {
            auto [p, q] = g.edge(e);
            int other = (p == v) ? q : p;
            if (present[other]) {
                nbrs.push_back(other);
                nbr_edge.push_back(e);
            }
        }
        if (nbrs.empty()) continue;

        auto family_snapshot = [&]() {
            std::vector<std::vector<int>> sets;
            for (int u : nbrs) sets.push_back(missing_colors(g, coloring, u));
            return SetFamily(palette, std::move(sets));
        };
        GameConfig config{Pot(palette_names(palette)), 1,
                          Demand::uniform(static_cast<int>(nbrs.size()))};
        GameState state(config, family_snapshot());
        FixerEngine engine(state);
        const int round_guard = state.family().size() * palette + 2;
        int rounds = 0;
        while (true) {
            FixerAction action = engine.next(state);
            if (std::holds_alternative<DeclareWin>(action)) {
                EtaTransversal tv = engine.assembled();
                for (std::size_t p = 0; p < nbrs.size(); ++p)
                    coloring.color[nbr_edge[p]] = tv.assignment[p].at(0);
                check_proper(g, coloring, /*allow_uncolored=*/true);
                break;
            }
            if (++rounds > round_guard)
                throw std::logic_error("vizing: engine exceeded its round bound");
            const FixerMove move = std::get<FixerMove>(action);
            GameState mid = apply_fixer(state, move);

            // Realize the move: at neighbor v_i the inserted color is present
            // and the removed one missing, so the Kempe exchange flips the
            // missing set exactly as the game move does.
            auto [recolored, endpoint] =
                kempe_swap(g, coloring, nbrs[move.set_index], move.remove, move.insert);
            coloring = std::move(recolored);

            BreakerMove reply;
            auto hit = std::find(nbrs.begin(), nbrs.end(), endpoint);
            if (hit != nbrs.end()) {
                int j = static_cast<int>(hit - nbrs.begin());
                if (j != move.set_index) {
                    bool gained_insert = !mid.family().contains(j, move.insert) &&
                                         std::count(missing_colors(g, coloring, endpoint).begin(),
                                                    missing_colors(g, coloring, endpoint).end(),
                                                    move.insert) > 0;
                    reply.swaps.push_back({j, gained_insert ? SwapDir::insert_x_remove_y
                                                            : SwapDir::insert_y_remove_x});
                }
            }
            state = apply_breaker(mid, reply);

            if (!(state.family() == family_snapshot()))
                throw std::logic_error("vizing: game family diverged from the coloring");
        }
    }
    check_proper(g, coloring);
    return coloring;
}

// ---------------------------------------------------------------------------
// Fan families and the fan inequality

FanFamily build_fan_family(const Multigraph& g, int x, int y, const EdgeColoring& pi) {
    if (x == y) throw std::invalid_argument("fan family needs distinct x and y");
    if (g.multiplicity(x, y) < 1) throw std::invalid_argument("xy is not an edge");
    // Locate one xy instance; pi colors the graph with that instance removed.
    int removed = -1;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [p, q] = g.edge(e);
        if ((p == x && q == y) || (p == y && q == x)) {
            removed = e;
            break;
        }
    }
    Multigraph rest = g.without_edge(removed);
    check_proper(rest, pi);

    FanFamily fan;
    fan.k = pi.k;
    fan.neighbors = g.neighbors(x);
    std::vector<std::vector<int>> sets;
    std::vector<int> eta;
    std::vector<char> fan_color_seen(pi.k, 0);
    for (int v : fan.neighbors) {
        std::vector<int> miss = missing_colors(rest, pi, v);
        std::vector<int> dv;
        for (int e = 0; e < rest.edge_count(); ++e) {
            auto [p, q] = rest.edge(e);
            if ((p == x && q == v) || (p == v && q == x)) dv.push_back(pi.color[e]);
        }
        std::sort(dv.begin(), dv.end());
        for (int col : dv) {
            if (fan_color_seen[col])
                throw std::invalid_argument("fan colors not pairwise disjoint (coloring "
                                            "improper at x)");
            fan_color_seen[col] = 1;
        }
        std::vector<int> s = miss;
        s.insert(s.end(), dv.begin(), dv.end());
        std::sort(s.begin(), s.end());
        const int expected = pi.k + g.multiplicity(x, v) - g.degree(v);
        if (static_cast<int>(s.size()) != expected)
            throw std::invalid_argument("fan set size violates k + mu(xv) - d(v)");
        sets.push_back(std::move(s));
        eta.push_back(g.multiplicity(x, v));
        fan.missing.push_back(std::move(miss));
        fan.fan_colors.push_back(std::move(dv));
    }
    fan.family = SetFamily(pi.k, std::move(sets));
    fan.eta = Demand(std::move(eta));
    return fan;
}

FanWitness fan_witness(const Multigraph& g, int x, int y) {
    if (x < 0 || x >= g.vertex_count() || y < 0 || y >= g.vertex_count() || x == y)
        throw std::invalid_argument("fan witness needs two distinct vertices");
    if (g.multiplicity(x, y) < 1) throw std::invalid_argument("xy is not an edge");
    const int chi = chromatic_index(g);
    if (chi < g.max_degree() + 1)
        throw std::invalid_argument("fan witness requires chi'(G) >= Delta + 1 (got chi' = " +
                                    std::to_string(chi) + ", Delta = " +
                                    std::to_string(g.max_degree()) + ")");
    int removed = -1;
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [p, q] = g.edge(e);
        if ((p == x && q == y) || (p == y && q == x)) {
            removed = e;
            break;
        }
    }
    if (!is_critical(g, removed))
        throw std::invalid_argument("fan witness requires a critical edge");

    const int k = chi - 1;
    auto pi = find_k_coloring(g.without_edge(removed), k);
    if (!pi) throw std::logic_error("fan witness: critical edge removal not k-colorable");
    FanFamily fan = build_fan_family(g, x, y, *pi);

    auto witness = deficiency_witness(fan.family, 1, fan.eta);
    if (!witness)
        throw std::logic_error("fan witness: corollary violated, no deficient sub-family");
    FanWitness out;
    out.x = x;
    out.y = y;
    out.chi = chi;
    for (int idx : witness->subset) out.fan.push_back(fan.neighbors[idx]);
    for (int v : out.fan) out.sum += g.degree(v) + g.multiplicity(x, v) + 1 - chi;
    if (std::find(out.fan.begin(), out.fan.end(), y) == out.fan.end())
        throw std::logic_error("fan witness: corollary violated, y not in X");
    if (out.fan.size() < 2)
        throw std::logic_error("fan witness: corollary violated, |X| < 2");
    if (out.sum < 2)
        throw std::logic_error("fan witness: corollary violated, sum < 2");
    return out;
}

} // namespace fixbreak
