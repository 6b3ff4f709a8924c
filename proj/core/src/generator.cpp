#include "stopgame/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace stopgame {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    // Fixed-width mapping keeps the stream portable across library versions.
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    return lo + u * (hi - lo);
}

}  // namespace

Instance generate_instance(const GeneratorParams& params) {
    if (params.horizon < 1)
        throw std::invalid_argument("generate: horizon must be at least 1");
    if (params.max_branching < 1)
        throw std::invalid_argument("generate: branching must be at least 1");
    if (params.lipschitz < 0.0 || !(params.scale > 0.0) || !(params.step > 0.0))
        throw std::invalid_argument("generate: bad lipschitz/scale/step");

    std::mt19937_64 rng(params.seed);

    // Tree: level by level; children of one parent sit on consecutive ids.
    std::vector<NodeSpec> nodes;
    nodes.push_back({-1, 1.0});
    int level_first = 0, level_last = 1;  // node-id range of the current level
    for (int level = 1; level <= params.horizon; ++level) {
        const int next_first = static_cast<int>(nodes.size());
        for (int parent = level_first; parent < level_last; ++parent) {
            const int kids =
                1 + static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                 params.max_branching));
            std::vector<double> weights(kids);
            double total = 0.0;
            for (int c = 0; c < kids; ++c) {
                weights[c] = uniform(rng, 0.2, 1.0);
                total += weights[c];
            }
            double used = 0.0;
            for (int c = 0; c < kids; ++c) {
                // Last edge takes the exact remainder so the sum is 1.0.
                const double p =
                    c + 1 == kids ? 1.0 - used : weights[c] / total;
                nodes.push_back({parent, p});
                used += p;
            }
        }
        level_first = next_first;
        level_last = static_cast<int>(nodes.size());
    }

    GridSpec grid{params.step, params.horizon};
    FilteredTree tree(grid, nodes);

    // Per-player coordinate walks: value at a node moves from its parent's
    // by at most lipschitz * step, so reading the walks at the level-j and
    // level-k ancestors gives a field whose same-scenario differences are
    // bounded by lipschitz * (grid distance).
    const double max_step = params.lipschitz * params.step;
    std::vector<std::vector<double>> walk_j(2), walk_k(2);
    for (int i = 0; i < 2; ++i) {
        walk_j[i].resize(tree.node_count());
        walk_k[i].resize(tree.node_count());
        for (int node = 0; node < tree.node_count(); ++node) {
            if (node == 0) {
                walk_j[i][0] = uniform(rng, -params.scale / 3.0, params.scale / 3.0);
                walk_k[i][0] = uniform(rng, -params.scale / 3.0, params.scale / 3.0);
            } else {
                const int p = tree.parent_of(node);
                walk_j[i][node] = walk_j[i][p] + uniform(rng, -max_step, max_step);
                walk_k[i][node] = walk_k[i][p] + uniform(rng, -max_step, max_step);
            }
        }
    }

    const int n = params.horizon + 1;
    std::array<std::vector<std::vector<double>>, 2> slices;
    for (int i = 0; i < 2; ++i) slices[i].resize(n * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const int level = std::max(j, k);
            auto [first, last] = tree.level_range(level);
            for (int i = 0; i < 2; ++i)
                slices[i][j * n + k].reserve(last - first);
            for (int node = first; node < last; ++node) {
                int at_j = node, at_k = node;
                for (int l = level; l > j; --l) at_j = tree.parent_of(at_j);
                for (int l = level; l > k; --l) at_k = tree.parent_of(at_k);
                const double v1 = std::clamp(walk_j[0][at_j] + walk_k[0][at_k],
                                             -params.scale, params.scale);
                slices[0][j * n + k].push_back(v1);
                const double v2 =
                    params.zero_sum
                        ? -v1
                        : std::clamp(walk_j[1][at_j] + walk_k[1][at_k],
                                     -params.scale, params.scale);
                slices[1][j * n + k].push_back(v2);
            }
        }

    InstanceMetadata meta;
    meta.seed = params.seed;
    meta.lipschitz = params.lipschitz;
    meta.mode = params.zero_sum ? "zero-sum" : "nonzero-sum";
    PayoffField payoffs(tree, std::move(slices));
    return Instance{std::move(tree), std::move(payoffs), std::move(meta)};
}

}  // namespace stopgame
