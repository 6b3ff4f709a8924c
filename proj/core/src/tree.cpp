#include "stopgame/tree.hpp"

#include <cmath>
#include <stdexcept>

namespace stopgame {

namespace {

// Outgoing edge probabilities must sum to one within this tolerance.
constexpr double kProbSumTol = 1e-12;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("tree: " + msg);
}

}  // namespace

void GridSpec::validate() const {
    if (!(step > 0.0) || !std::isfinite(step))
        throw std::invalid_argument("grid: step must be positive and finite");
    if (horizon < 1)
        throw std::invalid_argument("grid: horizon must be at least 1");
}

FilteredTree::FilteredTree(GridSpec grid, const std::vector<NodeSpec>& nodes)
    : grid_(grid) {
    grid_.validate();
    const int n = static_cast<int>(nodes.size());
    if (n == 0) fail("no nodes");
    if (nodes[0].parent != -1) fail("node 0 must be the root");

    parent_.resize(n);
    level_.resize(n);
    edge_prob_.resize(n);
    for (int i = 0; i < n; ++i) {
        parent_[i] = nodes[i].parent;
        edge_prob_[i] = nodes[i].edge_prob;
        if (i == 0) {
            level_[0] = 0;
            edge_prob_[0] = 1.0;
            continue;
        }
        if (nodes[i].parent < 0 || nodes[i].parent >= i)
            fail("node " + std::to_string(i) +
                 ": parent must be an earlier node (level-major order)");
        level_[i] = level_[nodes[i].parent] + 1;
        if (level_[i] > grid_.horizon)
            fail("node " + std::to_string(i) + ": level exceeds horizon");
        if (!(nodes[i].edge_prob > 0.0) || !std::isfinite(nodes[i].edge_prob) ||
            nodes[i].edge_prob > 1.0)
            fail("node " + std::to_string(i) + ": edge probability must lie in (0, 1]");
    }

    // Level-major id assignment, and children grouped consecutively.
    for (int i = 0; i + 1 < n; ++i) {
        if (level_[i + 1] < level_[i])
            fail("node " + std::to_string(i + 1) + ": ids are not level-major");
        if (level_[i + 1] == level_[i] && parent_[i + 1] < parent_[i])
            fail("node " + std::to_string(i + 1) +
                 ": within a level, nodes must be grouped by parent id");
    }

    level_begin_.assign(grid_.horizon + 2, 0);
    for (int i = 0; i < n; ++i) level_begin_[level_[i] + 1]++;
    for (int l = 0; l <= grid_.horizon; ++l) level_begin_[l + 1] += level_begin_[l];

    first_child_.assign(n, -1);
    child_count_.assign(n, 0);
    for (int i = 1; i < n; ++i) {
        const int p = parent_[i];
        if (child_count_[p] == 0) first_child_[p] = i;
        child_count_[p]++;
    }

    // Interior nodes need children; leaves live exactly at the horizon.
    for (int i = 0; i < n; ++i) {
        if (level_[i] < grid_.horizon && child_count_[i] == 0)
            fail("node " + std::to_string(i) + ": interior node has no children");
    }

    node_prob_.resize(n);
    node_prob_[0] = 1.0;
    for (int i = 1; i < n; ++i) node_prob_[i] = node_prob_[parent_[i]] * edge_prob_[i];

    for (int i = 0; i < n; ++i) {
        if (child_count_[i] == 0) continue;
        double sum = 0.0;
        for (int c = first_child_[i]; c < first_child_[i] + child_count_[i]; ++c)
            sum += edge_prob_[c];
        if (std::fabs(sum - 1.0) > kProbSumTol)
            fail("node " + std::to_string(i) +
                 ": stochasticity violated, outgoing edge probabilities sum to " +
                 std::to_string(sum));
    }

    // Scenario <-> leaf tables.
    const int horizon = grid_.horizon;
    const int scen_count = level_begin_[horizon + 1] - level_begin_[horizon];
    scenario_node_.resize(static_cast<std::size_t>(scen_count) * (horizon + 1));
    for (int s = 0; s < scen_count; ++s) {
        int node = level_begin_[horizon] + s;
        for (int l = horizon; l >= 0; --l) {
            scenario_node_[s * (horizon + 1) + l] = node;
            node = parent_[node];
        }
    }
    scenario_lo_.assign(n, scen_count);
    scenario_hi_.assign(n, 0);
    for (int s = 0; s < scen_count; ++s) {
        for (int l = 0; l <= horizon; ++l) {
            const int node = scenario_node_[s * (horizon + 1) + l];
            if (s < scenario_lo_[node]) scenario_lo_[node] = s;
            if (s + 1 > scenario_hi_[node]) scenario_hi_[node] = s + 1;
        }
    }
}

RandomVariable condition(const FilteredTree& tree, const RandomVariable& rv,
                         int level) {
    if (rv.level < 0 || rv.level > tree.horizon())
        throw std::invalid_argument("condition: variable level outside the grid");
    if (level < 0 || level > rv.level)
        throw std::invalid_argument("condition: target level must satisfy 0 <= level <= rv.level");
    if (static_cast<int>(rv.values.size()) != tree.level_size(rv.level))
        throw std::invalid_argument("condition: value count does not match the level");

    // Weighted mass at the source level, aggregated one level at a time.
    std::vector<double> mass(rv.values.size());
    {
        auto [first, last] = tree.level_range(rv.level);
        for (int node = first; node < last; ++node)
            mass[node - first] = tree.node_prob(node) * rv.values[node - first];
    }
    for (int l = rv.level - 1; l >= level; --l) {
        auto [first, last] = tree.level_range(l);
        const int child_first = tree.level_range(l + 1).first;
        std::vector<double> up(last - first, 0.0);
        for (int node = first; node < last; ++node) {
            double sum = 0.0;
            const int cf = tree.first_child(node);
            for (int c = cf; c < cf + tree.child_count(node); ++c)
                sum += mass[c - child_first];
            up[node - first] = sum;
        }
        mass.swap(up);
    }

    RandomVariable out;
    out.level = level;
    out.values.resize(mass.size());
    auto [first, last] = tree.level_range(level);
    for (int node = first; node < last; ++node)
        out.values[node - first] = mass[node - first] / tree.node_prob(node);
    return out;
}

double expectation(const FilteredTree& tree, const RandomVariable& rv) {
    return condition(tree, rv, 0).values[0];
}

double one_step_expectation(const FilteredTree& tree, int node,
                            const std::vector<double>& values) {
    const int cf = tree.first_child(node);
    const int cc = tree.child_count(node);
    if (cc == 0)
        throw std::invalid_argument("one_step_expectation: node is a leaf");
    double sum = 0.0;
    for (int c = cf; c < cf + cc; ++c) sum += tree.edge_prob(c) * values[c];
    return sum;
}

}  // namespace stopgame
