#pragma once

// Hand-checkable instances shared across the tests.
//
// DET2: deterministic chain, horizon 2, step 1, single scenario, payoff
//       max(j, k).  Everything about it can be read off a 3x3 table.
// COIN: root, children u/d with probability 1/2 each, one grandchild each.
//       Payoff 0 when both stop immediately, otherwise the branch sign
//       times max(j, k); player two holds the negated field.
// CONST: complete b-ary tree with constant payoff per player.

#include <array>
#include <cstdint>
#include <vector>

#include "stopgame/generator.hpp"
#include "stopgame/instance.hpp"
#include "stopgame/payoff.hpp"
#include "stopgame/stopping.hpp"
#include "stopgame/tree.hpp"

namespace fixtures {

using stopgame::FilteredTree;
using stopgame::GridSpec;
using stopgame::NodeSpec;
using stopgame::PayoffField;
using stopgame::StoppingTime;

inline FilteredTree det2_tree() {
    std::vector<NodeSpec> nodes(3);
    nodes[1].parent = 0;
    nodes[2].parent = 1;
    return FilteredTree(GridSpec{1.0, 2}, nodes);
}

inline PayoffField det2_payoffs(const FilteredTree& tree, bool zero_sum) {
    const int n = tree.horizon();
    std::array<std::vector<std::vector<double>>, 2> slices;
    for (auto& s : slices) s.resize((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            const double u = j > k ? j : k;
            const int count = tree.level_size(j > k ? j : k);
            slices[0][j * (n + 1) + k].assign(count, u);
            slices[1][j * (n + 1) + k].assign(count, zero_sum ? -u : u);
        }
    return PayoffField(tree, std::move(slices));
}

inline FilteredTree coin_tree() {
    std::vector<NodeSpec> nodes(5);
    nodes[1] = {0, 0.5};
    nodes[2] = {0, 0.5};
    nodes[3] = {1, 1.0};
    nodes[4] = {2, 1.0};
    return FilteredTree(GridSpec{1.0, 2}, nodes);
}

inline PayoffField coin_payoffs(const FilteredTree& tree) {
    const int n = tree.horizon();
    std::array<std::vector<std::vector<double>>, 2> slices;
    for (auto& s : slices) s.resize((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            const int m = j > k ? j : k;
            auto [first, last] = tree.level_range(m);
            std::vector<double> v;
            for (int node = first; node < last; ++node) {
                // branch sign: +1 through u (node 1), -1 through d
                int up = node;
                while (tree.level_of(up) > 1) up = tree.parent_of(up);
                const double sign = up == 1 ? 1.0 : -1.0;
                v.push_back(m == 0 ? 0.0 : sign * m);
            }
            slices[0][j * (n + 1) + k] = v;
            for (double& e : v) e = -e;
            slices[1][j * (n + 1) + k] = std::move(v);
        }
    return PayoffField(tree, std::move(slices));
}

inline FilteredTree const_tree(int horizon, int branching = 2) {
    std::vector<NodeSpec> nodes(1);
    int level_first = 0, level_last = 1;
    for (int level = 1; level <= horizon; ++level) {
        const int next_first = static_cast<int>(nodes.size());
        for (int parent = level_first; parent < level_last; ++parent)
            for (int c = 0; c < branching; ++c)
                nodes.push_back({parent, 1.0 / branching});
        level_first = next_first;
        level_last = static_cast<int>(nodes.size());
    }
    return FilteredTree(GridSpec{1.0, horizon}, nodes);
}

inline PayoffField const_payoffs(const FilteredTree& tree, double c1, double c2) {
    const int n = tree.horizon();
    std::array<std::vector<std::vector<double>>, 2> slices;
    for (auto& s : slices) s.resize((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            const int count = tree.level_size(j > k ? j : k);
            slices[0][j * (n + 1) + k].assign(count, c1);
            slices[1][j * (n + 1) + k].assign(count, c2);
        }
    return PayoffField(tree, std::move(slices));
}

// Stopping time from explicit per-node flags.
inline StoppingTime make_stop(std::vector<std::uint8_t> flags, int min_level = 0) {
    return StoppingTime{std::move(flags), min_level};
}

// The simplest admissible reaction family: entry k stops at k+1 (the
// horizon entry at the horizon).
inline stopgame::StrategyFamily grid_family(const FilteredTree& tree) {
    stopgame::StrategyFamily family;
    const int n = tree.horizon();
    for (int k = 0; k <= n; ++k)
        family.entries.push_back(
            stopgame::always_stop_at(tree, k + 1 > n ? n : k + 1));
    return family;
}

inline stopgame::StoppingStrategy strategy_at(const FilteredTree& tree, int level) {
    return {stopgame::always_stop_at(tree, level), grid_family(tree)};
}

inline stopgame::Instance gen(std::uint64_t seed, int horizon, int branching,
                              bool zero_sum, double step = 1.0,
                              double lipschitz = 1.0, double scale = 10.0) {
    stopgame::GeneratorParams params;
    params.seed = seed;
    params.horizon = horizon;
    params.step = step;
    params.max_branching = branching;
    params.lipschitz = lipschitz;
    params.scale = scale;
    params.zero_sum = zero_sum;
    return stopgame::generate_instance(params);
}

}  // namespace fixtures
