#include "stopgame/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stopgame/verify.hpp"

namespace stopgame {

namespace {

constexpr double kZeroSumTol = 1e-12;

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

void require_valid(const FilteredTree& tree, const StoppingStrategy& strategy,
                   const char* what) {
    auto issues = validate_strategy(tree, strategy);
    if (!issues.empty())
        throw std::logic_error(std::string("assemble: constructed ") + what +
                               " invalid: " + issues.front());
}

// E | f(at mu + delta) - f(at mu) | for a per-node process, shifts capped
// at the horizon.
double shifted_abs_change(const FilteredTree& tree, const AdaptedProcess& process,
                          const std::vector<int>& mu_times, int delta_levels) {
    double sum = 0.0;
    for (int s = 0; s < tree.scenario_count(); ++s) {
        const int at = mu_times[s];
        const int shifted = std::min(at + delta_levels, tree.horizon());
        sum += tree.scenario_prob(s) *
               std::fabs(process.values[tree.scenario_node(s, shifted)] -
                         process.values[tree.scenario_node(s, at)]);
    }
    return sum;
}

}  // namespace

AdaptedProcess stop_now_values(const FilteredTree& tree, const PayoffField& payoffs,
                               Player p, const StrategyFamily& opponent_reaction) {
    if (static_cast<int>(opponent_reaction.entries.size()) != tree.horizon() + 1)
        throw std::invalid_argument("stop_now_values: family must have horizon+1 entries");
    AdaptedProcess out;
    out.values.assign(tree.node_count(), 0.0);
    std::vector<double> scen(tree.scenario_count());
    for (int k = 0; k <= tree.horizon(); ++k) {
        const std::vector<int> react =
            realized_times(tree, opponent_reaction.entries[k]);
        for (int s = 0; s < tree.scenario_count(); ++s)
            scen[s] = p == Player::one
                          ? payoffs.value_for_scenario(tree, p, k, react[s], s)
                          : payoffs.value_for_scenario(tree, p, react[s], k, s);
        const std::vector<double> conditional = node_conditional(tree, scen, k);
        auto [first, last] = tree.level_range(k);
        for (int node = first; node < last; ++node)
            out.values[node] = conditional[node - first];
    }
    return out;
}

StoppingTime hitting_time(const FilteredTree& tree, const AdaptedProcess& game_value,
                          const AdaptedProcess& stop_now, double epsilon) {
    if (static_cast<int>(game_value.values.size()) != tree.node_count() ||
        static_cast<int>(stop_now.values.size()) != tree.node_count())
        throw std::invalid_argument("hitting_time: processes must match the tree");
    std::vector<std::uint8_t> region(tree.node_count(), 0);
    for (int node = 0; node < tree.node_count(); ++node)
        region[node] =
            game_value.values[node] <= stop_now.values[node] + epsilon ? 1 : 0;
    return first_entry(tree, region);
}

DeltaReport delta_conditions(const FilteredTree& tree, const Modulus& modulus,
                             const AdaptedProcess& stop_now1,
                             const AdaptedProcess& after_tau_stop1,
                             const AdaptedProcess& game_value1,
                             const StoppingTime& hitting1,
                             const StoppingTime& hitting2, int delta_levels,
                             double epsilon) {
    DeltaReport out;
    out.delta_levels = delta_levels;
    out.delta_time = delta_levels * tree.grid().step;
    const std::vector<int> mu1 = realized_times(tree, hitting1);
    const std::vector<int> mu2 = realized_times(tree, hitting2);

    const double r_delta = modulus.at_levels(delta_levels);
    out.conditions.push_back(
        {"modulus_at_delta", r_delta, epsilon, r_delta < epsilon});

    const double w_shift = shifted_abs_change(tree, stop_now1, mu1, delta_levels);
    out.conditions.push_back(
        {"stop_now_shift", w_shift, epsilon, w_shift < epsilon});

    // Probability that the next grid point after the first hitting time is
    // closer than 2*delta.  Hitting times are grid-aligned here, so the gap
    // is one full step and the probability is degenerate; it is weighed
    // against the payoff's maximal oscillation, which keeps constant fields
    // harmless.
    double gap_prob = 0.0;
    for (int s = 0; s < tree.scenario_count(); ++s) {
        const double gap = tree.grid().step;  // (floor(mu/h)+1)h - mu, on-grid
        if (gap < 2.0 * out.delta_time) gap_prob += tree.scenario_prob(s);
    }
    const double oscillation = modulus.at_levels(2 * tree.horizon());
    const double prob_bound = oscillation > 0.0
                                  ? epsilon / oscillation
                                  : std::numeric_limits<double>::infinity();
    out.conditions.push_back(
        {"grid_gap_probability", gap_prob, prob_bound, gap_prob < prob_bound});

    const double y_shift =
        shifted_abs_change(tree, after_tau_stop1, mu2, delta_levels);
    out.conditions.push_back(
        {"after_tau_stop_shift", y_shift, epsilon, y_shift < epsilon});

    const double v_shift =
        shifted_abs_change(tree, game_value1, mu1, delta_levels);
    out.conditions.push_back(
        {"game_value_shift", v_shift, epsilon, v_shift < epsilon});
    return out;
}

EquilibriumBundle assemble_zero_sum(const FilteredTree& tree,
                                    const PayoffField& payoffs, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("assemble_zero_sum: epsilon must be positive");
    if (!payoffs.is_zero_sum(kZeroSumTol))
        throw std::invalid_argument("assemble_zero_sum: payoffs are not zero-sum");

    EquilibriumBundle out;
    out.mode = GameMode::zero_sum;
    out.epsilon = epsilon;
    out.delta_levels = 0;

    EnvelopeSet env = build_envelopes(tree, payoffs);
    const PlayerEnvelopes& pe = env.of(Player::one);
    DynkinSolution game = solve_dynkin(tree, pe.after_rho_stop, pe.after_tau_stop,
                                       pe.tie_value, Stopper::rho);

    out.rho.first = game.rho_stop;
    out.rho.reaction = reaction_family(tree, env, Player::one, Stopper::rho);
    out.tau.first = game.tau_stop;
    out.tau.reaction = reaction_family(tree, env, Player::one, Stopper::tau);
    require_valid(tree, out.rho, "rho");
    require_valid(tree, out.tau, "tau");

    const Modulus modulus = empirical_modulus(tree, payoffs);
    out.modulus_at_step = modulus.at_levels(1);
    out.step_condition_ok = out.modulus_at_step < epsilon / 3.0;
    out.saddle_value = game.root_value();
    out.game_value1 = std::move(game.value);
    out.envelopes = std::move(env);
    return out;
}

EquilibriumBundle assemble_nonzero_sum(const FilteredTree& tree,
                                       const PayoffField& payoffs, double epsilon,
                                       int delta_levels) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("assemble_nonzero_sum: epsilon must be positive");
    if (delta_levels < 1 || delta_levels > tree.horizon())
        throw std::invalid_argument(
            "assemble_nonzero_sum: delta must be between one step and the horizon");

    EquilibriumBundle out;
    out.mode = GameMode::nonzero_sum;
    out.epsilon = epsilon;
    out.delta_levels = delta_levels;

    EnvelopeSet env = build_envelopes(tree, payoffs);
    StrategyFamily rho_family[2] = {
        reaction_family(tree, env, Player::one, Stopper::rho),
        reaction_family(tree, env, Player::two, Stopper::rho)};
    StrategyFamily tau_family[2] = {
        reaction_family(tree, env, Player::one, Stopper::tau),
        reaction_family(tree, env, Player::two, Stopper::tau)};

    // Stopping now, against the opponent's grid reaction.
    AdaptedProcess stop_now1 =
        stop_now_values(tree, payoffs, Player::one, tau_family[1]);
    AdaptedProcess stop_now2 =
        stop_now_values(tree, payoffs, Player::two, rho_family[0]);

    const PlayerEnvelopes& e1 = env.of(Player::one);
    const PlayerEnvelopes& e2 = env.of(Player::two);
    DynkinSolution game1 = solve_dynkin(tree, e1.after_rho_stop, e1.after_tau_stop,
                                        e1.tie_value, Stopper::rho);
    DynkinSolution game2 = solve_dynkin(tree, e2.after_rho_stop, e2.after_tau_stop,
                                        e2.tie_value, Stopper::tau);

    StoppingTime hit1 = hitting_time(tree, game1.value, stop_now1, epsilon);
    StoppingTime hit2 = hitting_time(tree, game2.value, stop_now2, epsilon);
    const std::vector<int> mu1 = realized_times(tree, hit1);
    const std::vector<int> mu2 = realized_times(tree, hit2);

    // Sub-game saddles restarted right after the earlier hitting time.
    StoppingTime tau1_restart = restrict_from(
        tree, game1.tau_region, shift_capped(tree, hit1, delta_levels));
    StoppingTime rho2_restart = restrict_from(
        tree, game2.rho_region, shift_capped(tree, hit2, delta_levels));
    const std::vector<int> tau1_restart_times = realized_times(tree, tau1_restart);
    const std::vector<int> rho2_restart_times = realized_times(tree, rho2_restart);

    // First stops, glued across {mu1 <= mu2} / {mu1 > mu2}.  Adaptedness of
    // the glue is certified by from_scenario_times.
    std::vector<int> rho_first(tree.scenario_count());
    std::vector<int> tau_first(tree.scenario_count());
    for (int s = 0; s < tree.scenario_count(); ++s) {
        if (mu1[s] <= mu2[s]) {
            rho_first[s] = mu1[s];
            tau_first[s] = tau1_restart_times[s];
        } else {
            rho_first[s] = rho2_restart_times[s];
            tau_first[s] = mu2[s];
        }
    }
    out.rho.first = from_scenario_times(tree, rho_first);
    out.tau.first = from_scenario_times(tree, tau_first);

    // Reaction families: own-game reactions before the switch level, the
    // other game's reactions once the opponent's side has settled first.
    out.rho.reaction.entries.reserve(tree.horizon() + 1);
    out.tau.reaction.entries.reserve(tree.horizon() + 1);
    std::vector<int> mixed(tree.scenario_count());
    for (int k = 0; k < tree.horizon(); ++k) {
        const std::vector<int> rho_own =
            realized_times(tree, rho_family[0].entries[k]);
        const std::vector<int> rho_other =
            realized_times(tree, rho_family[1].entries[k]);
        for (int s = 0; s < tree.scenario_count(); ++s) {
            const bool switched =
                k >= std::min(mu1[s], mu2[s]) + delta_levels && mu1[s] > mu2[s];
            mixed[s] = switched ? rho_other[s] : rho_own[s];
        }
        out.rho.reaction.entries.push_back(from_scenario_times(tree, mixed));

        const std::vector<int> tau_own =
            realized_times(tree, tau_family[1].entries[k]);
        const std::vector<int> tau_other =
            realized_times(tree, tau_family[0].entries[k]);
        for (int s = 0; s < tree.scenario_count(); ++s) {
            const bool switched =
                k >= std::min(mu1[s], mu2[s]) + delta_levels && mu1[s] <= mu2[s];
            mixed[s] = switched ? tau_other[s] : tau_own[s];
        }
        out.tau.reaction.entries.push_back(from_scenario_times(tree, mixed));
    }
    out.rho.reaction.entries.push_back(always_stop_at(tree, tree.horizon()));
    out.tau.reaction.entries.push_back(always_stop_at(tree, tree.horizon()));
    require_valid(tree, out.rho, "rho");
    require_valid(tree, out.tau, "tau");

    const Modulus modulus = empirical_modulus(tree, payoffs);
    out.modulus_at_step = modulus.at_levels(1);
    out.step_condition_ok = out.modulus_at_step < epsilon / 3.0;
    out.delta = delta_conditions(tree, modulus, stop_now1, e1.after_tau_stop,
                                 game1.value, hit1, hit2, delta_levels, epsilon);
    out.hitting1 = std::move(hit1);
    out.hitting2 = std::move(hit2);
    out.game_value1 = std::move(game1.value);
    out.game_value2 = std::move(game2.value);
    out.stop_now1 = std::move(stop_now1);
    out.stop_now2 = std::move(stop_now2);
    out.envelopes = std::move(env);
    return out;
}

double subgame_response_slack(const FilteredTree& tree, const PayoffField& payoffs,
                              const StoppingTime& sigma, double epsilon) {
    if (!payoffs.is_zero_sum(kZeroSumTol))
        throw std::invalid_argument("subgame_response_slack: payoffs are not zero-sum");
    EnvelopeSet env = build_envelopes(tree, payoffs);
    const PlayerEnvelopes& pe = env.of(Player::one);
    DynkinSolution game = solve_dynkin(tree, pe.after_rho_stop, pe.after_tau_stop,
                                       pe.tie_value, Stopper::rho);

    StoppingStrategy opponent;
    opponent.first = restrict_from(tree, game.tau_region, sigma);
    opponent.reaction = reaction_family(tree, env, Player::one, Stopper::tau);

    const BestResponseAt response =
        best_response_at(tree, payoffs, Player::one, opponent, sigma);
    const BoundaryValues values = subgame_value_at(tree, game, sigma);

    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.nodes.size(); ++i) {
        const double slack =
            response.values.values[i] - values.values[i] - 4.0 * epsilon;
        if (slack > worst) worst = slack;
    }
    return worst;
}

}  // namespace stopgame
