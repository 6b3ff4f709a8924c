#pragma once

#include <cstdint>
#include <vector>

#include "stopgame/stopping.hpp"
#include "stopgame/tree.hpp"

namespace stopgame {

// Solution of the two-sided stopping game on a band triple
// (after_rho_stop, after_tau_stop, tie_value): whoever stops first alone
// settles at their band process, simultaneous stops settle on tie_value.
// `sup_player` says which stopper maximizes; the other minimizes.  The band
// condition places tie_value between the two bands with the maximizing
// side's own band on the unfavorable side, which makes the value process a
// one-step median of band, continuation, band.
struct DynkinSolution {
    AdaptedProcess value;
    Stopper sup_player = Stopper::rho;
    // Stop regions: all nodes where stopping is (weakly) optimal for the
    // role.  The saddle stopping times are their first entries.
    std::vector<std::uint8_t> rho_region;
    std::vector<std::uint8_t> tau_region;
    StoppingTime rho_stop;
    StoppingTime tau_stop;

    double root_value() const { return value.values[0]; }
};

// Expected settlement of a pure pair of first-stop times against the bands:
//   after_rho_stop at rho0  where rho0 < tau0,
//   after_tau_stop at tau0  where tau0 < rho0,
//   tie_value at rho0       where they coincide.
double band_game_value(const FilteredTree& tree, const AdaptedProcess& after_rho_stop,
                       const AdaptedProcess& after_tau_stop,
                       const AdaptedProcess& tie_value, const StoppingTime& rho0,
                       const StoppingTime& tau0);

// Backward induction: at the horizon the value is tie_value; earlier it is
// the continuation clamped into the band, and a role stops exactly where
// its own band already matches the clamp (earliest optimal level).  The
// returned pair is a saddle point of band_game_value.
DynkinSolution solve_dynkin(const FilteredTree& tree,
                            const AdaptedProcess& after_rho_stop,
                            const AdaptedProcess& after_tau_stop,
                            const AdaptedProcess& tie_value, Stopper sup_player);

// The solved value restricted to sigma's boundary: the sub-game values of
// the same game started at sigma.
BoundaryValues subgame_value_at(const FilteredTree& tree,
                                const DynkinSolution& solution,
                                const StoppingTime& sigma);

// Minimum one-step drift E[value at next level | node] - value at node over
// all nodes strictly before mu (no first hit on the path yet).  A
// non-negative result (up to rounding) certifies the submartingale property
// of the value process up to mu.  Returns 0 when no node qualifies.
double submartingale_slack(const FilteredTree& tree, const AdaptedProcess& value,
                           const StoppingTime& mu);

}  // namespace stopgame
