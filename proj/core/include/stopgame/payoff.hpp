#pragma once

#include <array>
#include <span>
#include <vector>

#include "stopgame/stopping.hpp"
#include "stopgame/tree.hpp"

namespace stopgame {

enum class Player { one = 0, two = 1 };

inline int index_of(Player p) { return static_cast<int>(p); }
inline Player other(Player p) { return p == Player::one ? Player::two : Player::one; }

// The two-player payoff field U^i(j, k): for each player i and pair of stop
// levels (j, k), a random variable measurable at level max(j, k) -- the
// payoff when the first player stops at j and the second at k, settled once
// both have stopped.  Entries are stored per node of level max(j, k).
class PayoffField {
public:
    // slices[i][j * (horizon+1) + k] holds the per-node values of U^{i+1}(j, k)
    // at level max(j, k), node-id order.
    PayoffField(const FilteredTree& tree,
                std::array<std::vector<std::vector<double>>, 2> slices);

    int horizon() const { return horizon_; }

    // Value at a node of level max(j, k).
    double value_at_node(Player p, int j, int k, int node_level_index) const {
        return slices_[index_of(p)][slice_index(j, k)][node_level_index];
    }
    std::span<const double> slice(Player p, int j, int k) const {
        return slices_[index_of(p)][slice_index(j, k)];
    }

    // Value on a scenario: reads the scenario's atom at level max(j, k).
    double value_for_scenario(const FilteredTree& tree, Player p, int j, int k,
                              int scenario) const;

    // Uniform payoff bound M = max |U^i(j, k)|.
    double bound() const { return bound_; }

    bool is_zero_sum(double tol) const;

private:
    int slice_index(int j, int k) const { return j * (horizon_ + 1) + k; }

    int horizon_;
    std::array<std::vector<std::vector<double>>, 2> slices_;
    double bound_;
};

// Empirical modulus of continuity of the payoff field in its stop-level
// arguments: r at combined grid distance d = m * step is the largest
// same-scenario difference |U^i(j,k) - U^i(j',k')| over entries with
// |j-j'| + |k-k'| <= m, players included.  Non-decreasing with r(0) = 0.
struct Modulus {
    double step = 1.0;
    std::vector<double> table;  // index m = 0 .. 2*horizon

    double at_levels(int m) const {
        if (m < 0) m = 0;
        const int last = static_cast<int>(table.size()) - 1;
        return table[m > last ? last : m];
    }
    double at_time(double d) const;
};

Modulus empirical_modulus(const FilteredTree& tree, const PayoffField& payoffs);

// Expected payoff E[U^i(rho[tau], tau[rho])] of a strategy pair: on each
// scenario the pair settles at (rho[tau], tau[rho]) -- whoever stops first
// fixes the other's reaction anchor; ties settle on the diagonal.
double evaluate_game(const FilteredTree& tree, const PayoffField& payoffs,
                     Player p, const StoppingStrategy& rho,
                     const StoppingStrategy& tau);

// Conditional version at sigma's boundary.  Requires both first components
// to stop no earlier than sigma on every scenario.
BoundaryValues evaluate_subgame(const FilteredTree& tree,
                                const PayoffField& payoffs, Player p,
                                const StoppingStrategy& rho,
                                const StoppingStrategy& tau,
                                const StoppingTime& sigma);

}  // namespace stopgame
