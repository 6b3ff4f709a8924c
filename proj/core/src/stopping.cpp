#include "stopgame/stopping.hpp"

#include <stdexcept>

namespace stopgame {

namespace {

void check_size(const FilteredTree& tree, const StoppingTime& sigma,
                const char* what) {
    if (static_cast<int>(sigma.stop.size()) != tree.node_count())
        throw std::invalid_argument(std::string(what) +
                                    ": flag vector does not match the tree");
}

}  // namespace

StoppingTime always_stop_at(const FilteredTree& tree, int level) {
    if (level < 0 || level > tree.horizon())
        throw std::invalid_argument("always_stop_at: level outside the grid");
    StoppingTime out;
    out.stop.assign(tree.node_count(), 0);
    out.min_level = level;
    auto [first, last] = tree.level_range(level);
    for (int node = first; node < last; ++node) out.stop[node] = 1;
    auto [lf, ll] = tree.level_range(tree.horizon());
    for (int node = lf; node < ll; ++node) out.stop[node] = 1;
    return out;
}

StoppingTime first_entry(const FilteredTree& tree,
                         const std::vector<std::uint8_t>& node_set,
                         int min_level) {
    if (static_cast<int>(node_set.size()) != tree.node_count())
        throw std::invalid_argument("first_entry: node set does not match the tree");
    StoppingTime out;
    out.stop.assign(tree.node_count(), 0);
    out.min_level = min_level;
    for (int node = 0; node < tree.node_count(); ++node) {
        const int level = tree.level_of(node);
        if (level >= min_level && node_set[node]) out.stop[node] = 1;
        if (level == tree.horizon()) out.stop[node] = 1;
    }
    return out;
}

StoppingTime restrict_from(const FilteredTree& tree,
                           const std::vector<std::uint8_t>& region,
                           const StoppingTime& start) {
    if (static_cast<int>(region.size()) != tree.node_count())
        throw std::invalid_argument("restrict_from: region does not match the tree");
    check_size(tree, start, "restrict_from");
    // started[n] = start has occurred by n's level on the (common) path to n.
    std::vector<std::uint8_t> started(tree.node_count(), 0);
    StoppingTime out;
    out.stop.assign(tree.node_count(), 0);
    out.min_level = 0;
    for (int node = 0; node < tree.node_count(); ++node) {
        const int parent = tree.parent_of(node);
        started[node] = (parent >= 0 && started[parent]) || start.stop[node];
        if (started[node] && region[node]) out.stop[node] = 1;
        if (tree.level_of(node) == tree.horizon()) out.stop[node] = 1;
    }
    return out;
}

StoppingTime shift_capped(const FilteredTree& tree, const StoppingTime& sigma,
                          int levels) {
    if (levels < 0) throw std::invalid_argument("shift_capped: negative shift");
    std::vector<int> times = realized_times(tree, sigma);
    for (int& t : times) t = std::min(t + levels, tree.horizon());
    return from_scenario_times(tree, times);
}

int realized_time(const FilteredTree& tree, const StoppingTime& sigma,
                  int scenario) {
    for (int level = 0; level <= tree.horizon(); ++level)
        if (sigma.stop[tree.scenario_node(scenario, level)]) return level;
    throw std::logic_error("realized_time: no stop on path (leaf not flagged)");
}

std::vector<int> realized_times(const FilteredTree& tree,
                                const StoppingTime& sigma) {
    check_size(tree, sigma, "realized_times");
    std::vector<int> out(tree.scenario_count());
    for (int s = 0; s < tree.scenario_count(); ++s)
        out[s] = realized_time(tree, sigma, s);
    return out;
}

StoppingTime from_scenario_times(const FilteredTree& tree,
                                 const std::vector<int>& times) {
    if (static_cast<int>(times.size()) != tree.scenario_count())
        throw std::invalid_argument("from_scenario_times: one time per scenario required");
    StoppingTime out;
    out.stop.assign(tree.node_count(), 0);
    out.min_level = tree.horizon();
    for (int s = 0; s < tree.scenario_count(); ++s) {
        const int t = times[s];
        if (t < 0 || t > tree.horizon())
            throw std::invalid_argument("from_scenario_times: time outside the grid");
        out.stop[tree.scenario_node(s, t)] = 1;
        if (t < out.min_level) out.min_level = t;
    }
    auto [lf, ll] = tree.level_range(tree.horizon());
    for (int node = lf; node < ll; ++node) out.stop[node] = 1;
    // Certify adaptedness: the flags must reproduce the intended times.
    for (int s = 0; s < tree.scenario_count(); ++s)
        if (realized_time(tree, out, s) != times[s])
            throw std::logic_error(
                "from_scenario_times: times are not adapted to the filtration "
                "(scenario " + std::to_string(s) + ")");
    return out;
}

std::vector<int> react_at(const FilteredTree& tree, const StrategyFamily& family,
                          const StoppingTime& sigma) {
    if (static_cast<int>(family.entries.size()) != tree.horizon() + 1)
        throw std::invalid_argument("react_at: family must have horizon+1 entries");
    std::vector<int> out(tree.scenario_count());
    for (int s = 0; s < tree.scenario_count(); ++s) {
        const int anchor = realized_time(tree, sigma, s);
        out[s] = realized_time(tree, family.entries[anchor], s);
    }
    return out;
}

std::vector<int> compose(const FilteredTree& tree, const StoppingStrategy& rho,
                         const StoppingStrategy& tau) {
    if (static_cast<int>(rho.reaction.entries.size()) != tree.horizon() + 1)
        throw std::invalid_argument("compose: family must have horizon+1 entries");
    std::vector<int> out(tree.scenario_count());
    for (int s = 0; s < tree.scenario_count(); ++s) {
        const int own = realized_time(tree, rho.first, s);
        const int other = realized_time(tree, tau.first, s);
        out[s] = own <= other
                     ? own
                     : realized_time(tree, rho.reaction.entries[other], s);
    }
    return out;
}

std::vector<int> stopping_boundary(const FilteredTree& tree,
                                   const StoppingTime& sigma) {
    check_size(tree, sigma, "stopping_boundary");
    std::vector<std::uint8_t> seen(tree.node_count(), 0);
    std::vector<int> out;
    for (int node = 0; node < tree.node_count(); ++node) {
        const int parent = tree.parent_of(node);
        const bool covered = parent >= 0 && seen[parent];
        seen[node] = covered || sigma.stop[node];
        if (!covered && sigma.stop[node]) out.push_back(node);
    }
    return out;
}

BoundaryValues condition_at(const FilteredTree& tree,
                            std::span<const double> scenario_values,
                            const StoppingTime& sigma) {
    if (static_cast<int>(scenario_values.size()) != tree.scenario_count())
        throw std::invalid_argument("condition_at: one value per scenario required");
    BoundaryValues out;
    out.nodes = stopping_boundary(tree, sigma);
    out.values.reserve(out.nodes.size());
    for (int node : out.nodes) {
        auto [lo, hi] = tree.scenario_range(node);
        double mass = 0.0;
        for (int s = lo; s < hi; ++s)
            mass += tree.scenario_prob(s) * scenario_values[s];
        out.values.push_back(mass / tree.node_prob(node));
    }
    return out;
}

std::vector<std::string> validate_stopping_time(const FilteredTree& tree,
                                                const StoppingTime& sigma) {
    std::vector<std::string> out;
    if (static_cast<int>(sigma.stop.size()) != tree.node_count()) {
        out.push_back("flag vector size does not match the tree");
        return out;
    }
    auto [lf, ll] = tree.level_range(tree.horizon());
    for (int node = lf; node < ll; ++node)
        if (!sigma.stop[node])
            out.push_back("horizon forcing: leaf node " + std::to_string(node) +
                          " not marked stop");
    for (int node = 0; node < tree.node_count(); ++node)
        if (sigma.stop[node] && tree.level_of(node) < sigma.min_level)
            out.push_back("floor: node " + std::to_string(node) + " at level " +
                          std::to_string(tree.level_of(node)) +
                          " stops below the promised floor " +
                          std::to_string(sigma.min_level));
    return out;
}

std::vector<std::string> validate_strategy(const FilteredTree& tree,
                                           const StoppingStrategy& strategy) {
    std::vector<std::string> out;
    for (auto& v : validate_stopping_time(tree, strategy.first))
        out.push_back("first: " + v);
    if (static_cast<int>(strategy.reaction.entries.size()) != tree.horizon() + 1) {
        out.push_back("reaction: family must have horizon+1 entries");
        return out;
    }
    for (int k = 0; k <= tree.horizon(); ++k) {
        const auto& entry = strategy.reaction.entries[k];
        const std::string tag = "reaction[" + std::to_string(k) + "]: ";
        auto issues = validate_stopping_time(tree, entry);
        for (auto& v : issues) out.push_back(tag + v);
        if (!issues.empty()) continue;
        for (int s = 0; s < tree.scenario_count(); ++s) {
            const int t = realized_time(tree, entry, s);
            if (k < tree.horizon() && t <= k) {
                out.push_back(tag + "stops at level " + std::to_string(t) +
                              " <= anchor on scenario " + std::to_string(s) +
                              " (strict anticipativity)");
                break;
            }
            if (k == tree.horizon() && t != tree.horizon()) {
                out.push_back(tag + "must equal the horizon on every scenario");
                break;
            }
        }
    }
    return out;
}

}  // namespace stopgame
