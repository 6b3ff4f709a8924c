#pragma once

#include <vector>

#include "stopgame/payoff.hpp"
#include "stopgame/stopping.hpp"
#include "stopgame/tree.hpp"

namespace stopgame {

// Which argument of the payoff pair stays frozen at the anchor while the
// other runs over stopping times.
enum class FrozenSide { first, second };
enum class Sense { minimize, maximize };

struct AnchoredValue {
    RandomVariable value;   // optimal value at the anchor level's nodes
    StoppingTime optimizer; // attains it; stops at the earliest optimal level
};

// Optimal-stopping value anchored at `anchor`: over stopping times sigma
// with floor `anchor`, optimize E[U(anchor, sigma)] (frozen first) or
// E[U(sigma, anchor)] (frozen second), by backward induction from the
// horizon.  Ties stop early.
AnchoredValue anchored_value(const FilteredTree& tree, const PayoffField& payoffs,
                             Player p, int anchor, FrozenSide frozen, Sense sense);

// Same problem with floor anchor+1: the running argument may not stop at
// the anchor itself.  This is the reaction problem after the opponent has
// just stopped (used by the best-response machinery).
AnchoredValue anchored_value_after(const FilteredTree& tree,
                                   const PayoffField& payoffs, Player p,
                                   int anchor, FrozenSide frozen, Sense sense);

// Anchored envelopes of one player's payoff, one value per node:
//   after_rho_stop[n at level t] = opt over sigma >= t of E_n[U^i(t, sigma)]
//   after_tau_stop[n at level t] = opt over sigma >= t of E_n[U^i(sigma, t)]
//   tie_value[n at level t]      = U^i(t, t) at n
// Player one minimizes in after_rho_stop and maximizes in after_tau_stop;
// player two does the opposite, so for every player the three processes are
// ordered with tie_value in the middle.  The recorded optimizers are the
// grid reactions: tau_reaction[t] attains after_rho_stop at anchor t (the
// second argument varies), rho_reaction[t] attains after_tau_stop.
struct PlayerEnvelopes {
    AdaptedProcess after_rho_stop;
    AdaptedProcess after_tau_stop;
    AdaptedProcess tie_value;
    std::vector<StoppingTime> rho_reaction;  // index = anchor level
    std::vector<StoppingTime> tau_reaction;
};

struct EnvelopeSet {
    PlayerEnvelopes players[2];

    const PlayerEnvelopes& of(Player p) const { return players[index_of(p)]; }
};

EnvelopeSet build_envelopes(const FilteredTree& tree, const PayoffField& payoffs);

// The grid reaction family of one stopper: entry k is the recorded
// optimizer anchored at k+1 (its frozen argument sits at k+1, the next grid
// point, not at k), and entry horizon is the constant horizon.
StrategyFamily reaction_family(const FilteredTree& tree, const EnvelopeSet& env,
                               Player p, Stopper role);

// Worst-case slacks of the two grid-reaction inequalities, taken over all
// nodes at all levels:
//   rho-stop side: the envelope after_rho_stop versus stopping now with the
//                  opponent reacting through tau_family's next-anchor entry;
//   tau-stop side: after_tau_stop versus rho_family's entry.
// Each slack is signed so that only the non-trivial direction can go
// negative; both must exceed -2*epsilon whenever the payoff modulus at one
// grid step is below epsilon/3.
struct ReactionSlack {
    double rho_stop_slack = 0.0;
    double tau_stop_slack = 0.0;

    bool within(double epsilon) const {
        return rho_stop_slack > -2.0 * epsilon && tau_stop_slack > -2.0 * epsilon;
    }
};

ReactionSlack check_reaction_slack(const FilteredTree& tree,
                                   const PayoffField& payoffs, Player p,
                                   const EnvelopeSet& env,
                                   const StrategyFamily& rho_family,
                                   const StrategyFamily& tau_family);

}  // namespace stopgame
