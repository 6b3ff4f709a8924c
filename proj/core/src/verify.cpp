#include "stopgame/verify.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

#include "stopgame/envelopes.hpp"

namespace stopgame {

namespace {

// Deviator-ordered payoff on one scenario: the deviating player's own stop
// level is `own`, the opponent's is `opp`; the argument order follows the
// player's seat (player one is the first coordinate).
double seat_payoff(const FilteredTree& tree, const PayoffField& payoffs, Player p,
                   int own, int opp, int scenario) {
    return p == Player::one
               ? payoffs.value_for_scenario(tree, p, own, opp, scenario)
               : payoffs.value_for_scenario(tree, p, opp, own, scenario);
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

BestResponseAt best_response_at(const FilteredTree& tree, const PayoffField& payoffs,
                                Player p, const StoppingStrategy& opponent,
                                const StoppingTime& sigma) {
    const int horizon = tree.horizon();
    {
        auto issues = validate_strategy(tree, opponent);
        if (!issues.empty())
            throw std::invalid_argument("best_response: opponent invalid: " +
                                        issues.front());
        const auto start = realized_times(tree, sigma);
        const auto opp_first = realized_times(tree, opponent.first);
        for (int s = 0; s < tree.scenario_count(); ++s)
            if (opp_first[s] < start[s])
                throw std::invalid_argument(
                    "best_response: opponent stops before sigma (scenario " +
                    std::to_string(s) + ")");
    }

    // The payoff argument frozen in phase B is the opponent's stop level.
    const FrozenSide frozen =
        p == Player::one ? FrozenSide::second : FrozenSide::first;

    // Phase B: reaction values per level, plus the reaction family entries.
    std::vector<std::vector<double>> react_value(horizon);  // [s] at level-s nodes
    StrategyFamily reaction;
    reaction.entries.reserve(horizon + 1);
    for (int s = 0; s < horizon; ++s) {
        AnchoredValue av =
            anchored_value_after(tree, payoffs, p, s, frozen, Sense::maximize);
        react_value[s] = std::move(av.value.values);
        reaction.entries.push_back(std::move(av.optimizer));
    }
    reaction.entries.push_back(always_stop_at(tree, horizon));

    // Stop-now values while the opponent keeps running: settle against the
    // opponent's reaction entry anchored at the current level.
    std::vector<std::vector<double>> stop_now(horizon);
    std::vector<double> scen(tree.scenario_count());
    for (int k = 0; k < horizon; ++k) {
        const std::vector<int> opp_react =
            realized_times(tree, opponent.reaction.entries[k]);
        for (int s = 0; s < tree.scenario_count(); ++s)
            scen[s] = seat_payoff(tree, payoffs, p, k, opp_react[s], s);
        stop_now[k] = node_conditional(tree, scen, k);
    }

    // Phase A, bottom-up.  Nodes below an opponent stop are never reached
    // in this phase; their entries are simply unused.
    std::vector<double> value(tree.node_count(), 0.0);
    StoppingTime first;
    first.stop.assign(tree.node_count(), 0);
    first.min_level = 0;
    for (int lvl = horizon; lvl >= 0; --lvl) {
        auto [first_node, last_node] = tree.level_range(lvl);
        for (int node = first_node; node < last_node; ++node) {
            const int idx = node - first_node;
            if (lvl == horizon) {
                value[node] = payoffs.value_at_node(p, lvl, lvl, idx);
                first.stop[node] = 1;
                continue;
            }
            if (opponent.first.stop[node]) {
                // Simultaneous stop (tie) versus reacting strictly later.
                const double tie = payoffs.value_at_node(p, lvl, lvl, idx);
                const double react = react_value[lvl][idx];
                value[node] = tie >= react ? tie : react;
                first.stop[node] = tie >= react ? 1 : 0;
            } else {
                const double now = stop_now[lvl][idx];
                const double cont = one_step_expectation(tree, node, value);
                value[node] = now >= cont ? now : cont;
                first.stop[node] = now >= cont ? 1 : 0;
            }
        }
    }
    {
        auto [lf, ll] = tree.level_range(horizon);
        for (int node = lf; node < ll; ++node) first.stop[node] = 1;
    }

    BestResponseAt out;
    out.values.nodes = stopping_boundary(tree, sigma);
    out.values.values.reserve(out.values.nodes.size());
    for (int node : out.values.nodes) out.values.values.push_back(value[node]);
    out.strategy.first = std::move(first);
    out.strategy.reaction = std::move(reaction);
    return out;
}

BestResponse best_response(const FilteredTree& tree, const PayoffField& payoffs,
                           Player p, const StoppingStrategy& opponent) {
    BestResponseAt at =
        best_response_at(tree, payoffs, p, opponent, always_stop_at(tree, 0));
    BestResponse out;
    out.value = at.values.values[0];
    out.strategy = std::move(at.strategy);
    return out;
}

std::uint64_t count_stopping_times(const FilteredTree& tree, std::uint64_t cap) {
    // f(leaf) = 1; f(node) = 1 + prod f(children); saturate at cap.
    std::vector<std::uint64_t> count(tree.node_count(), 1);
    for (int node = tree.node_count() - 1; node >= 0; --node) {
        if (tree.is_leaf(node)) continue;
        std::uint64_t prod = 1;
        const int cf = tree.first_child(node);
        for (int c = cf; c < cf + tree.child_count(node); ++c) {
            if (count[c] > cap / std::max<std::uint64_t>(prod, 1)) {
                prod = cap + 1;
                break;
            }
            prod *= count[c];
        }
        count[node] = prod >= cap ? cap + 1 : prod + 1;
    }
    return std::min<std::uint64_t>(count[0], cap + 1);
}

namespace {

// Enumerate stop-flag assignments on the subtree of `root`.  A candidate
// either stops at the current node or delegates to all children
// independently; flags below a stop are left clear and the walk treats a
// flagless path as stopping at the horizon.
void enumerate_rec(const FilteredTree& tree, std::vector<int>& todo,
                   std::vector<std::uint8_t>& flags,
                   const std::function<void()>& fn) {
    if (todo.empty()) {
        fn();
        return;
    }
    const int node = todo.back();
    todo.pop_back();
    if (tree.is_leaf(node)) {
        flags[node] = 1;
        enumerate_rec(tree, todo, flags, fn);
        flags[node] = 0;
    } else {
        flags[node] = 1;
        enumerate_rec(tree, todo, flags, fn);
        flags[node] = 0;
        const std::size_t mark = todo.size();
        const int cf = tree.first_child(node);
        for (int c = cf; c < cf + tree.child_count(node); ++c) todo.push_back(c);
        enumerate_rec(tree, todo, flags, fn);
        todo.resize(mark);
    }
    todo.push_back(node);
}

void for_each_stop_rule(const FilteredTree& tree, int root, bool may_stop_at_root,
                        std::vector<std::uint8_t>& flags,
                        const std::function<void()>& fn) {
    std::vector<int> todo;
    if (may_stop_at_root) {
        todo.push_back(root);
        enumerate_rec(tree, todo, flags, fn);
    } else {
        if (tree.is_leaf(root))
            throw std::invalid_argument("enumerate: cannot defer at a leaf");
        const int cf = tree.first_child(root);
        for (int c = cf; c < cf + tree.child_count(root); ++c) todo.push_back(c);
        enumerate_rec(tree, todo, flags, fn);
    }
}

int walk_first_flag(const FilteredTree& tree, const std::vector<std::uint8_t>& flags,
                    int scenario) {
    for (int level = 0; level <= tree.horizon(); ++level)
        if (flags[tree.scenario_node(scenario, level)]) return level;
    return tree.horizon();
}

}  // namespace

double enumerate_best_response(const FilteredTree& tree, const PayoffField& payoffs,
                               Player p, const StoppingStrategy& opponent,
                               std::uint64_t cap) {
    if (count_stopping_times(tree, cap) > cap)
        throw std::invalid_argument(
            "enumerate_best_response: stopping-time count exceeds the cap");

    const std::vector<int> opp_first = realized_times(tree, opponent.first);
    std::vector<std::vector<int>> opp_react(tree.horizon() + 1);
    for (int k = 0; k <= tree.horizon(); ++k)
        opp_react[k] = realized_times(tree, opponent.reaction.entries[k]);

    // Brute-force reaction values at the opponent's first-stop nodes: the
    // best expected settlement over every stop rule on the remaining
    // subtree that starts strictly later.
    std::vector<double> react_value(tree.node_count(), 0.0);
    std::vector<std::uint8_t> flags(tree.node_count(), 0);
    for (const int node : stopping_boundary(tree, opponent.first)) {
        const int level = tree.level_of(node);
        if (level == tree.horizon()) continue;
        auto [lo, hi] = tree.scenario_range(node);
        double best = 0.0;
        bool have = false;
        for_each_stop_rule(tree, node, /*may_stop_at_root=*/false, flags, [&] {
            double sum = 0.0;
            for (int s = lo; s < hi; ++s)
                sum += tree.scenario_prob(s) *
                       seat_payoff(tree, payoffs, p,
                                   walk_first_flag(tree, flags, s), level, s);
            sum /= tree.node_prob(node);
            if (!have || sum > best) best = sum, have = true;
        });
        react_value[node] = best;
    }

    // Outer enumeration over the deviator's first-stop rule.
    double best = 0.0;
    bool have = false;
    for_each_stop_rule(tree, 0, /*may_stop_at_root=*/true, flags, [&] {
        double total = 0.0;
        for (int s = 0; s < tree.scenario_count(); ++s) {
            const int own = walk_first_flag(tree, flags, s);
            const int opp = opp_first[s];
            double settled;
            if (own < opp)
                settled = seat_payoff(tree, payoffs, p, own, opp_react[own][s], s);
            else if (own == opp)
                settled = seat_payoff(tree, payoffs, p, own, own, s);
            else
                settled = react_value[tree.scenario_node(s, opp)];
            total += tree.scenario_prob(s) * settled;
        }
        if (!have || total > best) best = total, have = true;
    });
    return best;
}

GapReport nash_gap(const FilteredTree& tree, const PayoffField& payoffs,
                   const StoppingStrategy& rho, const StoppingStrategy& tau) {
    GapReport out;
    out.value1 = evaluate_game(tree, payoffs, Player::one, rho, tau);
    out.value2 = evaluate_game(tree, payoffs, Player::two, rho, tau);
    BestResponse b1 = best_response(tree, payoffs, Player::one, tau);
    BestResponse b2 = best_response(tree, payoffs, Player::two, rho);
    out.gap1 = b1.value - out.value1;
    out.gap2 = b2.value - out.value2;
    out.best1 = std::move(b1.strategy);
    out.best2 = std::move(b2.strategy);
    return out;
}

}  // namespace stopgame
