#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "stopgame/stopping.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace stopgame;

TEST_CASE("stopping: constant times and first hits") {
    const FilteredTree t = fixtures::coin_tree();
    for (int level = 0; level <= t.horizon(); ++level) {
        const StoppingTime st = always_stop_at(t, level);
        for (int s = 0; s < t.scenario_count(); ++s)
            CHECK(realized_time(t, st, s) == level);
        CHECK(validate_stopping_time(t, st).empty());
    }

    // stop at node u only, forced at the leaves
    const StoppingTime st = fixtures::make_stop({0, 1, 0, 1, 1});
    CHECK(realized_time(t, st, 0) == 1);
    CHECK(realized_time(t, st, 1) == 2);
    CHECK(oracle::walk_first_hit(t, st, 0) == 1);
    CHECK(oracle::walk_first_hit(t, st, 1) == 2);
}

TEST_CASE("stopping: first entry of a region honours the floor") {
    const FilteredTree t = fixtures::coin_tree();
    std::vector<std::uint8_t> region(t.node_count(), 0);
    region[0] = 1;
    region[2] = 1;
    const StoppingTime st = first_entry(t, region, 1);
    CHECK(st.min_level == 1);
    CHECK(realized_time(t, st, 0) == 2);  // root excluded by the floor
    CHECK(realized_time(t, st, 1) == 1);
}

TEST_CASE("stopping: restart a region from a random time") {
    const FilteredTree t = fixtures::coin_tree();
    std::vector<std::uint8_t> region(t.node_count(), 1);  // stop anywhere
    const StoppingTime start = fixtures::make_stop({0, 1, 0, 1, 1});
    const StoppingTime st = restrict_from(t, region, start);
    CHECK(realized_time(t, st, 0) == 1);
    CHECK(realized_time(t, st, 1) == 2);

    std::vector<std::uint8_t> leaves_only(t.node_count(), 0);
    leaves_only[3] = leaves_only[4] = 1;
    const StoppingTime late = restrict_from(t, leaves_only, always_stop_at(t, 0));
    CHECK(realized_time(t, late, 0) == 2);
    CHECK(realized_time(t, late, 1) == 2);
}

TEST_CASE("stopping: capped shift") {
    const FilteredTree t = fixtures::coin_tree();
    const StoppingTime st = fixtures::make_stop({0, 1, 0, 1, 1});
    const StoppingTime shifted = shift_capped(t, st, 1);
    CHECK(realized_time(t, shifted, 0) == 2);  // 1 + 1
    CHECK(realized_time(t, shifted, 1) == 2);  // capped at the horizon
}

TEST_CASE("stopping: scenario times certify adaptedness") {
    const FilteredTree t = fixtures::const_tree(2);  // binary, 4 scenarios
    // scenarios 0,1 share the level-1 atom; stopping at 1 for scenario 0
    // but at 2 for scenario 1 is not adapted
    CHECK_THROWS_AS(from_scenario_times(t, {1, 2, 2, 2}), std::logic_error);
    const StoppingTime ok = from_scenario_times(t, {1, 1, 2, 2});
    CHECK(realized_time(t, ok, 0) == 1);
    CHECK(realized_time(t, ok, 1) == 1);
    CHECK(realized_time(t, ok, 2) == 2);
    CHECK(validate_stopping_time(t, ok).empty());
}

TEST_CASE("stopping: reactions anchored at the opponent's stop") {
    const FilteredTree t = fixtures::det2_tree();
    StrategyFamily family;
    family.entries = {fixtures::make_stop({0, 0, 1}, 1),
                      fixtures::make_stop({0, 0, 1}, 2),
                      fixtures::make_stop({0, 0, 1}, 2)};
    const std::vector<int> times = react_at(t, family, always_stop_at(t, 0));
    CHECK(times[0] == 2);
}

TEST_CASE("stopping: composition settles whoever stops first") {
    const FilteredTree t = fixtures::det2_tree();
    StoppingStrategy rho;
    rho.first = always_stop_at(t, 2);
    rho.reaction.entries = {fixtures::make_stop({0, 0, 1}, 1),
                            fixtures::make_stop({0, 0, 1}, 2),
                            fixtures::make_stop({0, 0, 1}, 2)};
    StoppingStrategy tau;
    tau.first = always_stop_at(t, 0);
    tau.reaction.entries = {fixtures::make_stop({0, 0, 1}, 1),
                            fixtures::make_stop({0, 0, 1}, 2),
                            fixtures::make_stop({0, 0, 1}, 2)};
    CHECK(compose(t, rho, tau)[0] == 2);  // tau stopped first, rho reacts at 2
    CHECK(compose(t, tau, rho)[0] == 0);  // tau keeps its own first time

    StoppingStrategy both1 = rho;
    both1.first = always_stop_at(t, 1);
    CHECK(compose(t, both1, both1)[0] == 1);  // tie sticks to the diagonal
}

TEST_CASE("stopping: boundary conditioning matches the scenario oracle") {
    const FilteredTree t = fixtures::coin_tree();
    const std::vector<double> scenario_values = {4.0, -2.0};
    const StoppingTime at1 = always_stop_at(t, 1);
    const BoundaryValues bv = condition_at(t, scenario_values, at1);
    REQUIRE(bv.nodes.size() == 2);
    CHECK(bv.nodes[0] == 1);
    CHECK(bv.values[0] == doctest::Approx(4.0));
    CHECK(bv.values[1] == doctest::Approx(-2.0));

    // deeper tree: two scenarios per boundary node
    const FilteredTree b = fixtures::const_tree(2);
    const std::vector<double> sv = {1.0, 3.0, -1.0, 5.0};
    const BoundaryValues bb = condition_at(b, sv, always_stop_at(b, 1));
    const std::vector<double> direct = oracle::condition_by_scenarios(
        b, RandomVariable{2, sv}, 1);
    REQUIRE(bb.values.size() == direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i)
        CHECK(bb.values[i] == doctest::Approx(direct[i]).epsilon(1e-12));
}

TEST_CASE("stopping: structural validation catches broken inputs") {
    const FilteredTree t = fixtures::coin_tree();
    SUBCASE("unflagged leaf") {
        const StoppingTime st = fixtures::make_stop({0, 0, 0, 1, 0});
        CHECK(!validate_stopping_time(t, st).empty());
    }
    SUBCASE("flag below the promised floor") {
        const StoppingTime st = fixtures::make_stop({1, 0, 0, 1, 1}, 1);
        CHECK(!validate_stopping_time(t, st).empty());
    }
    SUBCASE("wrong flag count") {
        const StoppingTime st = fixtures::make_stop({1, 1, 1});
        CHECK(!validate_stopping_time(t, st).empty());
    }
    SUBCASE("reaction entry stopping at its own anchor") {
        StoppingStrategy s;
        s.first = always_stop_at(t, 1);
        s.reaction.entries = {always_stop_at(t, 0),  // must stop after 0
                              always_stop_at(t, 2),
                              always_stop_at(t, 2)};
        CHECK(!validate_strategy(t, s).empty());
    }
    SUBCASE("valid strategy") {
        StoppingStrategy s;
        s.first = always_stop_at(t, 1);
        s.reaction.entries = {fixtures::make_stop({0, 0, 0, 1, 1}, 1),
                              fixtures::make_stop({0, 0, 0, 1, 1}, 2),
                              always_stop_at(t, 2)};
        CHECK(validate_strategy(t, s).empty());
    }
}
