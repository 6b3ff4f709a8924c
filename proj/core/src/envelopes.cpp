#include "stopgame/envelopes.hpp"

#include <limits>
#include <stdexcept>

namespace stopgame {

namespace {

// Backward induction for one anchored slice.  `floor` is the first level at
// which the running argument may stop (anchor, or anchor+1 for reaction
// problems).  The running argument is forced to stop at the horizon.
AnchoredValue anchored_slice(const FilteredTree& tree, const PayoffField& payoffs,
                             Player p, int anchor, FrozenSide frozen, Sense sense,
                             int floor) {
    if (anchor < 0 || anchor > tree.horizon())
        throw std::invalid_argument("anchored_value: anchor outside the grid");
    if (floor > tree.horizon())
        throw std::invalid_argument("anchored_value: floor above the horizon");

    std::vector<double> val(tree.node_count(), 0.0);
    StoppingTime opt;
    opt.stop.assign(tree.node_count(), 0);
    opt.min_level = floor;

    for (int lvl = tree.horizon(); lvl >= anchor; --lvl) {
        auto [first, last] = tree.level_range(lvl);
        for (int node = first; node < last; ++node) {
            const int idx = node - first;
            const double stop_value =
                frozen == FrozenSide::first
                    ? payoffs.value_at_node(p, anchor, lvl, idx)
                    : payoffs.value_at_node(p, lvl, anchor, idx);
            if (lvl == tree.horizon()) {
                val[node] = stop_value;
                opt.stop[node] = 1;
                continue;
            }
            const double cont = one_step_expectation(tree, node, val);
            if (lvl >= floor) {
                const bool stops = sense == Sense::maximize ? stop_value >= cont
                                                            : stop_value <= cont;
                val[node] = stops ? stop_value : cont;
                opt.stop[node] = stops ? 1 : 0;
            } else {
                val[node] = cont;
            }
        }
    }

    AnchoredValue out;
    out.value.level = anchor;
    auto [first, last] = tree.level_range(anchor);
    out.value.values.assign(val.begin() + first, val.begin() + last);
    out.optimizer = std::move(opt);
    return out;
}

// Conditional mean of per-scenario values at every node of one level.
std::vector<double> node_conditional(const FilteredTree& tree,
                                     const std::vector<double>& scenario_values,
                                     int level) {
    auto [first, last] = tree.level_range(level);
    std::vector<double> out(last - first);
    for (int node = first; node < last; ++node) {
        auto [lo, hi] = tree.scenario_range(node);
        double mass = 0.0;
        for (int s = lo; s < hi; ++s)
            mass += tree.scenario_prob(s) * scenario_values[s];
        out[node - first] = mass / tree.node_prob(node);
    }
    return out;
}

}  // namespace

AnchoredValue anchored_value(const FilteredTree& tree, const PayoffField& payoffs,
                             Player p, int anchor, FrozenSide frozen, Sense sense) {
    return anchored_slice(tree, payoffs, p, anchor, frozen, sense, anchor);
}

AnchoredValue anchored_value_after(const FilteredTree& tree,
                                   const PayoffField& payoffs, Player p,
                                   int anchor, FrozenSide frozen, Sense sense) {
    if (anchor >= tree.horizon())
        throw std::invalid_argument(
            "anchored_value_after: no room to react after the horizon");
    return anchored_slice(tree, payoffs, p, anchor, frozen, sense, anchor + 1);
}

EnvelopeSet build_envelopes(const FilteredTree& tree, const PayoffField& payoffs) {
    EnvelopeSet out;
    for (int i = 0; i < 2; ++i) {
        const Player p = i == 0 ? Player::one : Player::two;
        PlayerEnvelopes& env = out.players[i];
        env.after_rho_stop.values.assign(tree.node_count(), 0.0);
        env.after_tau_stop.values.assign(tree.node_count(), 0.0);
        env.tie_value.values.assign(tree.node_count(), 0.0);
        env.rho_reaction.reserve(tree.horizon() + 1);
        env.tau_reaction.reserve(tree.horizon() + 1);
        // Player one fears the reaction (minimize); player two shapes it
        // (maximize).  The roles flip between the two frozen sides.
        const Sense rho_stop_sense = p == Player::one ? Sense::minimize : Sense::maximize;
        const Sense tau_stop_sense = p == Player::one ? Sense::maximize : Sense::minimize;
        for (int t = 0; t <= tree.horizon(); ++t) {
            AnchoredValue x =
                anchored_value(tree, payoffs, p, t, FrozenSide::first, rho_stop_sense);
            AnchoredValue y =
                anchored_value(tree, payoffs, p, t, FrozenSide::second, tau_stop_sense);
            auto [first, last] = tree.level_range(t);
            for (int node = first; node < last; ++node) {
                env.after_rho_stop.values[node] = x.value.values[node - first];
                env.after_tau_stop.values[node] = y.value.values[node - first];
                env.tie_value.values[node] =
                    payoffs.value_at_node(p, t, t, node - first);
            }
            env.tau_reaction.push_back(std::move(x.optimizer));
            env.rho_reaction.push_back(std::move(y.optimizer));
        }
    }
    return out;
}

StrategyFamily reaction_family(const FilteredTree& tree, const EnvelopeSet& env,
                               Player p, Stopper role) {
    const PlayerEnvelopes& pe = env.of(p);
    StrategyFamily family;
    family.entries.reserve(tree.horizon() + 1);
    for (int k = 0; k < tree.horizon(); ++k) {
        // Next-anchor rule: react with the optimizer anchored at k+1, whose
        // frozen argument also sits at k+1.
        family.entries.push_back(role == Stopper::rho ? pe.rho_reaction[k + 1]
                                                      : pe.tau_reaction[k + 1]);
    }
    family.entries.push_back(always_stop_at(tree, tree.horizon()));
    return family;
}

ReactionSlack check_reaction_slack(const FilteredTree& tree,
                                   const PayoffField& payoffs, Player p,
                                   const EnvelopeSet& env,
                                   const StrategyFamily& rho_family,
                                   const StrategyFamily& tau_family) {
    const PlayerEnvelopes& pe = env.of(p);
    // For player one the envelopes bound these values from below/above by
    // construction, so only one direction of each difference is at stake;
    // for player two the senses (and hence the signs) flip.
    const double sign = p == Player::one ? 1.0 : -1.0;
    ReactionSlack out;
    out.rho_stop_slack = std::numeric_limits<double>::infinity();
    out.tau_stop_slack = std::numeric_limits<double>::infinity();

    std::vector<double> scen(tree.scenario_count());
    for (int t = 0; t <= tree.horizon(); ++t) {
        const std::vector<int> tau_times =
            realized_times(tree, tau_family.entries[t]);
        for (int s = 0; s < tree.scenario_count(); ++s)
            scen[s] = payoffs.value_for_scenario(tree, p, t, tau_times[s], s);
        std::vector<double> expected = node_conditional(tree, scen, t);
        auto [first, last] = tree.level_range(t);
        for (int node = first; node < last; ++node) {
            const double slack =
                sign * (pe.after_rho_stop.values[node] - expected[node - first]);
            if (slack < out.rho_stop_slack) out.rho_stop_slack = slack;
        }

        const std::vector<int> rho_times =
            realized_times(tree, rho_family.entries[t]);
        for (int s = 0; s < tree.scenario_count(); ++s)
            scen[s] = payoffs.value_for_scenario(tree, p, rho_times[s], t, s);
        expected = node_conditional(tree, scen, t);
        for (int node = first; node < last; ++node) {
            const double slack =
                sign * (expected[node - first] - pe.after_tau_stop.values[node]);
            if (slack < out.tau_stop_slack) out.tau_stop_slack = slack;
        }
    }
    return out;
}

}  // namespace stopgame
