#include "stopgame/dynkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace stopgame {

namespace {

// Band ordering may be violated by at most this much before we refuse.
constexpr double kBandTol = 1e-9;

void check_process(const FilteredTree& tree, const AdaptedProcess& p,
                   const char* what) {
    if (static_cast<int>(p.values.size()) != tree.node_count())
        throw std::invalid_argument(std::string("dynkin: ") + what +
                                    " does not match the tree");
}

}  // namespace

double band_game_value(const FilteredTree& tree, const AdaptedProcess& after_rho_stop,
                       const AdaptedProcess& after_tau_stop,
                       const AdaptedProcess& tie_value, const StoppingTime& rho0,
                       const StoppingTime& tau0) {
    check_process(tree, after_rho_stop, "after_rho_stop");
    check_process(tree, after_tau_stop, "after_tau_stop");
    check_process(tree, tie_value, "tie_value");
    double sum = 0.0;
    for (int s = 0; s < tree.scenario_count(); ++s) {
        const int r = realized_time(tree, rho0, s);
        const int t = realized_time(tree, tau0, s);
        double settled;
        if (r < t)
            settled = after_rho_stop.values[tree.scenario_node(s, r)];
        else if (t < r)
            settled = after_tau_stop.values[tree.scenario_node(s, t)];
        else
            settled = tie_value.values[tree.scenario_node(s, r)];
        sum += tree.scenario_prob(s) * settled;
    }
    return sum;
}

DynkinSolution solve_dynkin(const FilteredTree& tree,
                            const AdaptedProcess& after_rho_stop,
                            const AdaptedProcess& after_tau_stop,
                            const AdaptedProcess& tie_value, Stopper sup_player) {
    check_process(tree, after_rho_stop, "after_rho_stop");
    check_process(tree, after_tau_stop, "after_tau_stop");
    check_process(tree, tie_value, "tie_value");

    // Band condition: the maximizing stopper's own band is the lower one.
    for (int node = 0; node < tree.node_count(); ++node) {
        const double x = after_rho_stop.values[node];
        const double y = after_tau_stop.values[node];
        const double z = tie_value.values[node];
        const double lo = sup_player == Stopper::rho ? x : y;
        const double hi = sup_player == Stopper::rho ? y : x;
        if (lo > z + kBandTol || z > hi + kBandTol)
            throw std::invalid_argument(
                "dynkin: band condition violated at node " + std::to_string(node));
    }

    DynkinSolution out;
    out.sup_player = sup_player;
    out.value.values.assign(tree.node_count(), 0.0);
    out.rho_region.assign(tree.node_count(), 0);
    out.tau_region.assign(tree.node_count(), 0);

    for (int lvl = tree.horizon(); lvl >= 0; --lvl) {
        auto [first, last] = tree.level_range(lvl);
        for (int node = first; node < last; ++node) {
            if (lvl == tree.horizon()) {
                out.value.values[node] = tie_value.values[node];
                out.rho_region[node] = 1;
                out.tau_region[node] = 1;
                continue;
            }
            const double cont = one_step_expectation(tree, node, out.value.values);
            const double x = after_rho_stop.values[node];
            const double y = after_tau_stop.values[node];
            // One-step game: each side stops once its own band is at least
            // as good as continuing, which clamps the continuation into the
            // band (the median of the three values, whatever the
            // orientation).
            if (sup_player == Stopper::rho) {
                out.rho_region[node] = x >= cont ? 1 : 0;
                out.tau_region[node] = y <= cont ? 1 : 0;
            } else {
                out.rho_region[node] = x <= cont ? 1 : 0;
                out.tau_region[node] = y >= cont ? 1 : 0;
            }
            out.value.values[node] = std::clamp(cont, std::min(x, y), std::max(x, y));
        }
    }

    out.rho_stop = first_entry(tree, out.rho_region);
    out.tau_stop = first_entry(tree, out.tau_region);
    return out;
}

BoundaryValues subgame_value_at(const FilteredTree& tree,
                                const DynkinSolution& solution,
                                const StoppingTime& sigma) {
    BoundaryValues out;
    out.nodes = stopping_boundary(tree, sigma);
    out.values.reserve(out.nodes.size());
    for (int node : out.nodes) out.values.push_back(solution.value.values[node]);
    return out;
}

double submartingale_slack(const FilteredTree& tree, const AdaptedProcess& value,
                           const StoppingTime& mu) {
    check_process(tree, value, "value");
    std::vector<std::uint8_t> hit(tree.node_count(), 0);
    double slack = std::numeric_limits<double>::infinity();
    for (int node = 0; node < tree.node_count(); ++node) {
        const int parent = tree.parent_of(node);
        hit[node] = (parent >= 0 && hit[parent]) || mu.stop[node];
        if (hit[node] || tree.is_leaf(node)) continue;
        const double drift =
            one_step_expectation(tree, node, value.values) - value.values[node];
        if (drift < slack) slack = drift;
    }
    return std::isinf(slack) ? 0.0 : slack;
}

}  // namespace stopgame
