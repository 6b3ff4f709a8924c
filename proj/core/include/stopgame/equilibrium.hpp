#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stopgame/dynkin.hpp"
#include "stopgame/envelopes.hpp"
#include "stopgame/payoff.hpp"
#include "stopgame/stopping.hpp"
#include "stopgame/tree.hpp"

namespace stopgame {

enum class GameMode { zero_sum, nonzero_sum };

// One numerically evaluated smallness condition for the shift delta.
struct DeltaCondition {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// The shift conditions are diagnostic: they are reported, never enforced.
// On this grid the hitting times are grid-aligned, so the gap-probability
// condition degenerates (probability one) unless the payoff oscillation
// vanishes.
struct DeltaReport {
    int delta_levels = 1;
    double delta_time = 0.0;
    std::vector<DeltaCondition> conditions;

    bool all_pass() const {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }
};

// A constructed strategy pair with the data that certifies it.
struct EquilibriumBundle {
    GameMode mode = GameMode::nonzero_sum;
    double epsilon = 0.0;
    int delta_levels = 0;  // 0 in zero-sum mode
    StoppingStrategy rho;
    StoppingStrategy tau;

    double modulus_at_step = 0.0;  // payoff modulus at one grid step
    bool step_condition_ok = false;  // modulus_at_step < epsilon / 3

    std::optional<EnvelopeSet> envelopes;
    std::optional<AdaptedProcess> game_value1, game_value2;  // solved band games
    std::optional<AdaptedProcess> stop_now1, stop_now2;      // vs. grid reactions
    std::optional<StoppingTime> hitting1, hitting2;
    std::optional<DeltaReport> delta;
    std::optional<double> saddle_value;  // zero-sum root value
};

/// Expected payoff of stopping right now, per node: at a node of level k the
// player stops while the opponent follows their grid reaction family's
// entry k.  The horizon entry settles on the diagonal.
AdaptedProcess stop_now_values(const FilteredTree& tree, const PayoffField& payoffs,
                               Player p, const StrategyFamily& opponent_reaction);

// First level at which the solved game value is within epsilon of the
// stop-now value (first entry of {value <= stop_now + epsilon}; the horizon
// always qualifies).
StoppingTime hitting_time(const FilteredTree& tree, const AdaptedProcess& game_value,
                          const AdaptedProcess& stop_now, double epsilon);

// Numeric evaluation of the five shift-smallness conditions for player
// one's deviation analysis.  `osc` weighting for the grid-gap probability
// uses the payoff's maximal oscillation, so constant fields degenerate to a
// pass.
DeltaReport delta_conditions(const FilteredTree& tree, const Modulus& modulus,
                             const AdaptedProcess& stop_now1,
                             const AdaptedProcess& after_tau_stop1,
                             const AdaptedProcess& game_value1,
                             const StoppingTime& hitting1,
                             const StoppingTime& hitting2, int delta_levels,
                             double epsilon);

// Zero-sum construction: solve the band game on player one's envelopes and
// pair its saddle with the grid reaction families.  The payoffs must be
// zero-sum to 1e-12.  When the one-step modulus is below epsilon/3 the pair
// is a 5*epsilon equilibrium; otherwise the violated precondition is
// reported through step_condition_ok.
EquilibriumBundle assemble_zero_sum(const FilteredTree& tree,
                                    const PayoffField& payoffs, double epsilon);

// Non-zero-sum construction: solve both players' band games, locate the
// hitting times where stopping now is epsilon-close to the game value, and
// glue first-stop rules and reaction families scenario-wise across
// {hitting1 <= hitting2} and its complement, switching to the sub-game
// saddles after the earlier hitting time plus delta.  Measurability of the
// glued objects is certified during construction.  With the shift
// conditions satisfied the pair is an 18*epsilon equilibrium.
EquilibriumBundle assemble_nonzero_sum(const FilteredTree& tree,
                                       const PayoffField& payoffs, double epsilon,
                                       int delta_levels = 1);

// Zero-sum sub-game certificate at sigma: the worst excess, over sigma's
// boundary nodes, of player one's best response against the restarted
// saddle package over the sub-game value plus 4*epsilon.  Non-positive (up
// to rounding) on every sigma.
double subgame_response_slack(const FilteredTree& tree, const PayoffField& payoffs,
                              const StoppingTime& sigma, double epsilon);

}  // namespace stopgame
