#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stopgame/tree.hpp"

namespace stopgame {

// The two stopper roles of a stopping game: rho is the first component of
// the payoff's argument pair (player one's stop), tau the second.
enum class Stopper { rho, tau };

// A stopping time as per-node stop/continue flags with first-hit semantics:
// the realized time on a scenario is the first level along its path whose
// node is flagged.  Every leaf is flagged, so stopping is forced at the
// horizon.  `min_level` records a promised floor: no flag sits below it.
struct StoppingTime {
    std::vector<std::uint8_t> stop;
    int min_level = 0;
};

// A family of stopping times indexed by anchor level k = 0..horizon.
// Entry k stops strictly after k (floor k+1); the final entry is the
// constant horizon.  Families provide the reaction to an opponent who
// stopped at the anchor.
struct StrategyFamily {
    std::vector<StoppingTime> entries;
};

// A strategy: when to stop first (`first`), and how to react if the
// opponent stopped at level k before us (`reaction` entry k).
struct StoppingStrategy {
    StoppingTime first;
    StrategyFamily reaction;
};

// Values attached to the first-hit nodes of a stopping time, level-major.
struct BoundaryValues {
    std::vector<int> nodes;
    std::vector<double> values;
};

// The constant stopping time == level.
StoppingTime always_stop_at(const FilteredTree& tree, int level);

// First entry of a node set at or above `min_level`; leaves are forced.
StoppingTime first_entry(const FilteredTree& tree,
                         const std::vector<std::uint8_t>& node_set,
                         int min_level = 0);

// First hit of `region` at or after the (random) time `start`.  Used to
// restart a solved game's stop region from a later stopping time.
StoppingTime restrict_from(const FilteredTree& tree,
                           const std::vector<std::uint8_t>& region,
                           const StoppingTime& start);

// Realized time min(sigma + levels, horizon).
StoppingTime shift_capped(const FilteredTree& tree, const StoppingTime& sigma,
                          int levels);

int realized_time(const FilteredTree& tree, const StoppingTime& sigma,
                  int scenario);
std::vector<int> realized_times(const FilteredTree& tree,
                                const StoppingTime& sigma);

// Build a stopping time whose realized time equals `times` on every
// scenario.  Throws std::logic_error if `times` is not adapted (scenarios
// sharing an atom at the stop level must agree), since callers use this to
// certify measurability of case-glued constructions.
StoppingTime from_scenario_times(const FilteredTree& tree,
                                 const std::vector<int>& times);

// Per-scenario realized time of the family entry anchored at sigma's
// realized time: the reaction to an opponent stopping at sigma.
std::vector<int> react_at(const FilteredTree& tree, const StrategyFamily& family,
                          const StoppingTime& sigma);

// Per-scenario composed time rho[tau]: rho's first time where it stops no
// later than tau's, and rho's reaction to tau's first time otherwise.
std::vector<int> compose(const FilteredTree& tree, const StoppingStrategy& rho,
                         const StoppingStrategy& tau);

// First-hit nodes of sigma, level-major.
std::vector<int> stopping_boundary(const FilteredTree& tree,
                                   const StoppingTime& sigma);

// Conditional expectation of per-scenario values at sigma's boundary: for
// each first-hit node, the probability-weighted mean over the scenarios
// through it.
BoundaryValues condition_at(const FilteredTree& tree,
                            std::span<const double> scenario_values,
                            const StoppingTime& sigma);

// Structural validation; returns human-readable violations (empty = valid).
std::vector<std::string> validate_stopping_time(const FilteredTree& tree,
                                                const StoppingTime& sigma);
std::vector<std::string> validate_strategy(const FilteredTree& tree,
                                           const StoppingStrategy& strategy);

}  // namespace stopgame
