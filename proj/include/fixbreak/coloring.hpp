#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fixbreak/core.hpp"

namespace fixbreak {

/// Multigraph on vertices 0..n-1; parallel edges are repeated (u, v) pairs
/// and loops are rejected. Colorings address edge instances by their index
/// in the edge list.
class Multigraph {
public:
    Multigraph(int n, std::vector<std::pair<int, int>> edges, bool simple = false);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    std::pair<int, int> edge(int e) const;
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool simple() const { return simple_; }

    int degree(int v) const;
    int max_degree() const;
    int multiplicity(int u, int v) const;
    const std::vector<int>& incident(int v) const;  // edge instance ids
    std::vector<int> neighbors(int v) const;        // distinct, sorted

    /// Same graph minus one edge instance; later instances shift down by one.
    Multigraph without_edge(int e) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> incident_;
    bool simple_ = false;
};

/// Edge coloring with palette 0..k-1; -1 marks an uncolored instance.
struct EdgeColoring {
    int k = 0;
    std::vector<int> color;
};

/// Throws std::invalid_argument when two instances sharing a vertex share a
/// color, a color leaves the palette, or (unless allowed) an instance is
/// uncolored.
void check_proper(const Multigraph& g, const EdgeColoring& c, bool allow_uncolored = false);

/// Exchange colors a and b on the maximal alternating path starting at v.
/// Requires exactly one of a, b present at v. Returns the recolored
/// coloring and the path's other endpoint; only the two endpoints change
/// their missing-color sets.
std::pair<EdgeColoring, int> kempe_swap(const Multigraph& g, const EdgeColoring& c,
                                        int v, int a, int b);

/// Missing colors at v: palette members not on any colored edge at v.
std::vector<int> missing_colors(const Multigraph& g, const EdgeColoring& c, int v);

/// First proper k-coloring found by lowest-color-first backtracking over
/// edge instances in input order, or nothing.
std::optional<EdgeColoring> find_k_coloring(const Multigraph& g, int k);

/// Exact chromatic index by backtracking with color-class symmetry pruning.
/// Guarded at 16 edge instances.
int chromatic_index(const Multigraph& g);

/// chi'(G - e) < chi'(G).
bool is_critical(const Multigraph& g, int e);

/// Proper coloring with at most Delta+1 colors, built by re-inserting peeled
/// vertices and letting the Fixer engine play the missing-color game, with
/// every proposed swap realized as a Kempe chain and the induced reply fed
/// back as a Breaker_1 move. Every step is validated by the game rules.
EdgeColoring vizing_color(const Multigraph& g);

/// The missing-colors-plus-fan-colors family at x for a k-coloring of G
/// minus one xy instance, with demand mu(xv).
struct FanFamily {
    int k = 0;
    std::vector<int> neighbors;                // N(x), sorted
    SetFamily family;                          // aligned with neighbors; pot = [k]
    Demand eta;                                // mu(xv)
    std::vector<std::vector<int>> missing;     // colors absent at v
    std::vector<std::vector<int>> fan_colors;  // colors on the x-v instances
};

FanFamily build_fan_family(const Multigraph& g, int x, int y, const EdgeColoring& pi);

/// A neighbor set certifying the fan inequality at a critical edge.
struct FanWitness {
    int x = -1;
    int y = -1;
    int chi = 0;
    std::vector<int> fan;  // X, contains y, |X| >= 2
    int sum = 0;           // sum over X of d(v) + mu(xv) + 1 - chi'
};

/// Requires chi'(G) >= Delta+1 and xy critical. Colors G minus one xy
/// instance with chi'-1 colors, builds the fan family and extracts the
/// deficiency witness; the returned set satisfies y in X, |X| >= 2 and
/// sum >= 2.
FanWitness fan_witness(const Multigraph& g, int x, int y);

} // namespace fixbreak
