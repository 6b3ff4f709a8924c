#pragma once

#include <cstdint>
#include <string>

#include "stopgame/payoff.hpp"
#include "stopgame/stopping.hpp"
#include "stopgame/tree.hpp"

namespace stopgame {

struct BestResponse {
    double value = 0.0;
    StoppingStrategy strategy;  // attains the value against the opponent
};

struct BestResponseAt {
    BoundaryValues values;  // best-response value per boundary node of sigma
    StoppingStrategy strategy;
};

// Exact best response of player p against a fixed opponent strategy, by a
// two-phase dynamic program.  Phase A (opponent still running): at each
// node the deviator picks the better of stopping now -- settling against
// the opponent's reaction entry for this level -- and continuing; where the
// opponent's first component stops, the choice is between the diagonal tie
// and the phase-B reaction value.  Phase B (opponent stopped at level s):
// an anchored optimal-stopping problem with floor s+1 and the opponent's
// level frozen at s.
BestResponse best_response(const FilteredTree& tree, const PayoffField& payoffs,
                           Player p, const StoppingStrategy& opponent);

// Conditional variant: deviations may not stop before sigma, and values are
// reported at sigma's boundary nodes.  The opponent's first component must
// not stop before sigma either.
BestResponseAt best_response_at(const FilteredTree& tree, const PayoffField& payoffs,
                                Player p, const StoppingStrategy& opponent,
                                const StoppingTime& sigma);

// Exhaustive oracle: enumerates every first-stop rule of the deviator (and,
// where the opponent stops first, every reaction on the remaining subtree)
// and returns the maximal expected payoff.  Refuses trees whose stopping-
// time count exceeds `cap`.
double enumerate_best_response(const FilteredTree& tree, const PayoffField& payoffs,
                               Player p, const StoppingStrategy& opponent,
                               std::uint64_t cap = 1'000'000);

// Number of distinct stopping times on the tree (first-stop rules).  Counts
// above the cap are reported as cap + 1, so callers can test "fits" cheaply.
std::uint64_t count_stopping_times(const FilteredTree& tree, std::uint64_t cap);

// Nash gaps of a candidate pair: how much each player gains by deviating to
// their exact best response.  Non-negative up to rounding by construction.
struct GapReport {
    double gap1 = 0.0;
    double gap2 = 0.0;
    double value1 = 0.0;  // candidate pair's expected payoffs
    double value2 = 0.0;
    StoppingStrategy best1;  // witnesses
    StoppingStrategy best2;

    double worst() const { return gap1 > gap2 ? gap1 : gap2; }
};

GapReport nash_gap(const FilteredTree& tree, const PayoffField& payoffs,
                   const StoppingStrategy& rho, const StoppingStrategy& tau);

}  // namespace stopgame
