#pragma once

#include <string>
#include <utility>
#include <vector>

namespace stopgame {

// Uniform time grid t_k = k * step for k = 0..horizon.
struct GridSpec {
    double step = 1.0;
    int horizon = 1;

    double time_at(int level) const { return step * level; }
    void validate() const;  // throws std::invalid_argument
};

// Construction record for one tree node.  Nodes must be listed level-major
// (all of level k before any of level k+1) and, within a level, grouped by
// parent in increasing parent order, so children get consecutive ids.
struct NodeSpec {
    int parent = -1;        // -1 marks the root
    double edge_prob = 1.0; // transition probability from the parent
};

// A finite filtered probability space, represented as a rooted scenario
// tree.  The atoms of F_{t_k} are the nodes at level k; a scenario is a
// root-to-leaf path and is identified with its leaf.  Every leaf sits at
// the terminal level, so adapted data can be stored per node and
// conditional expectations reduce to probability-weighted sums over
// descendants.
class FilteredTree {
public:
    FilteredTree(GridSpec grid, const std::vector<NodeSpec>& nodes);

    const GridSpec& grid() const { return grid_; }
    int horizon() const { return grid_.horizon; }
    int node_count() const { return static_cast<int>(parent_.size()); }

    int level_of(int node) const { return level_[node]; }
    int parent_of(int node) const { return parent_[node]; }
    int first_child(int node) const { return first_child_[node]; }
    int child_count(int node) const { return child_count_[node]; }
    bool is_leaf(int node) const { return child_count_[node] == 0; }

    double edge_prob(int node) const { return edge_prob_[node]; }
    double node_prob(int node) const { return node_prob_[node]; }

    // Node ids of level k form the contiguous range [first, last).
    std::pair<int, int> level_range(int level) const {
        return {level_begin_[level], level_begin_[level + 1]};
    }
    int level_size(int level) const {
        return level_begin_[level + 1] - level_begin_[level];
    }
    // Position of `node` within its level.
    int level_index(int node) const {
        return node - level_begin_[level_[node]];
    }
    int node_at(int level, int index) const { return level_begin_[level] + index; }

    int scenario_count() const { return level_size(grid_.horizon); }
    double scenario_prob(int scenario) const {
        return node_prob_[node_at(grid_.horizon, scenario)];
    }
    // The scenario's atom at a given level (an ancestor of its leaf).
    int scenario_node(int scenario, int level) const {
        return scenario_node_[scenario * (grid_.horizon + 1) + level];
    }
    // Scenarios passing through `node`, as the contiguous range [lo, hi).
    std::pair<int, int> scenario_range(int node) const {
        return {scenario_lo_[node], scenario_hi_[node]};
    }

private:
    GridSpec grid_;
    std::vector<int> parent_;
    std::vector<int> level_;
    std::vector<int> first_child_;
    std::vector<int> child_count_;
    std::vector<double> edge_prob_;
    std::vector<double> node_prob_;
    std::vector<int> level_begin_;   // size horizon + 2
    std::vector<int> scenario_node_; // scenario-major [scenario][level]
    std::vector<int> scenario_lo_, scenario_hi_;
};

// A random variable measurable at one level: one value per node of `level`,
// in node-id order.
struct RandomVariable {
    int level = 0;
    std::vector<double> values;
};

// An adapted process: one value per node of the whole tree.
struct AdaptedProcess {
    std::vector<double> values;

    double at(int node) const { return values[node]; }
};

// Conditional expectation E[rv | F_{t_level}] for level <= rv.level,
// computed by probability-weighted aggregation over descendants.  The tower
// property holds up to floating-point rounding.
RandomVariable condition(const FilteredTree& tree, const RandomVariable& rv,
                         int level);

double expectation(const FilteredTree& tree, const RandomVariable& rv);

// One-step continuation value at a non-leaf node: sum of edge_prob * value
// over the node's children.  `values` is node-id indexed over the whole
// tree; only the children's entries are read.
double one_step_expectation(const FilteredTree& tree, int node,
                            const std::vector<double>& values);

}  // namespace stopgame
