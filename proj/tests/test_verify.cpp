#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "stopgame/verify.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace stopgame;

TEST_CASE("verify: best response on hand-checkable instances") {
    SUBCASE("constant field: nothing to gain") {
        const FilteredTree t = fixtures::const_tree(2);
        const PayoffField pk = fixtures::const_payoffs(t, -2.0, 3.0);
        for (int level = 0; level <= 2; ++level) {
            const BestResponse br1 = best_response(t, pk, Player::one,
                                                   fixtures::strategy_at(t, level));
            CHECK(br1.value == doctest::Approx(-2.0));
            const BestResponse br2 = best_response(t, pk, Player::two,
                                                   fixtures::strategy_at(t, level));
            CHECK(br2.value == doctest::Approx(3.0));
        }
    }
    SUBCASE("chain: wait out an opponent who stops immediately") {
        const FilteredTree t = fixtures::det2_tree();
        const PayoffField pd = fixtures::det2_payoffs(t, false);
        const StoppingStrategy tau = fixtures::strategy_at(t, 0);
        const BestResponse br = best_response(t, pd, Player::one, tau);
        CHECK(br.value == doctest::Approx(2.0));
        CHECK(validate_strategy(t, br.strategy).empty());
        CHECK(evaluate_game(t, pd, Player::one, br.strategy, tau) ==
              doctest::Approx(br.value).epsilon(1e-12));
    }
}

TEST_CASE("verify: best response equals exhaustive enumeration") {
    SUBCASE("constant field") {
        const FilteredTree t = fixtures::const_tree(2);
        const PayoffField pk = fixtures::const_payoffs(t, 0.5, 0.5);
        CHECK(enumerate_best_response(t, pk, Player::one,
                                      fixtures::strategy_at(t, 1)) ==
              doctest::Approx(0.5));
    }
    SUBCASE("chain, every opponent first rule") {
        const FilteredTree t = fixtures::det2_tree();
        const PayoffField pd = fixtures::det2_payoffs(t, false);
        for (int level = 0; level <= 2; ++level) {
            const StoppingStrategy opp = fixtures::strategy_at(t, level);
            for (Player p : {Player::one, Player::two})
                CHECK(best_response(t, pd, p, opp).value ==
                      doctest::Approx(enumerate_best_response(t, pd, p, opp))
                          .epsilon(1e-12));
        }
    }
    SUBCASE("coin instance, both players") {
        const FilteredTree t = fixtures::coin_tree();
        const PayoffField pc = fixtures::coin_payoffs(t);
        for (int level = 0; level <= 2; ++level) {
            const StoppingStrategy opp = fixtures::strategy_at(t, level);
            for (Player p : {Player::one, Player::two})
                CHECK(best_response(t, pc, p, opp).value ==
                      doctest::Approx(enumerate_best_response(t, pc, p, opp))
                          .epsilon(1e-9));
        }
    }
    SUBCASE("small generated instances") {
        int done = 0;
        for (std::uint64_t seed = 70; done < 5 && seed < 120; ++seed) {
            const Instance inst = fixtures::gen(seed, 3, 2, seed % 2 == 0);
            if (count_stopping_times(inst.tree, 1u << 20) > 4000) continue;
            ++done;
            const StoppingStrategy opp = fixtures::strategy_at(inst.tree, 1);
            for (Player p : {Player::one, Player::two}) {
                const BestResponse br = best_response(inst.tree, inst.payoffs, p, opp);
                CHECK(br.value ==
                      doctest::Approx(enumerate_best_response(inst.tree,
                                                              inst.payoffs, p, opp))
                          .epsilon(1e-9));
                // the witness attains the claimed value
                const double attained =
                    p == Player::one
                        ? evaluate_game(inst.tree, inst.payoffs, p, br.strategy, opp)
                        : evaluate_game(inst.tree, inst.payoffs, p, opp, br.strategy);
                CHECK(attained == doctest::Approx(br.value).epsilon(1e-9));
            }
        }
        CHECK(done == 5);
    }
}

TEST_CASE("verify: conditional best response at a boundary") {
    const FilteredTree t = fixtures::coin_tree();
    const PayoffField pc = fixtures::coin_payoffs(t);
    const StoppingTime sigma = always_stop_at(t, 1);
    const StoppingStrategy opp = fixtures::strategy_at(t, 1);
    const BestResponseAt br = best_response_at(t, pc, Player::one, opp, sigma);
    REQUIRE(br.values.nodes.size() == 2);
    // the reported boundary values are attained by the returned strategy
    const BoundaryValues attained =
        evaluate_subgame(t, pc, Player::one, br.strategy, opp, sigma);
    for (std::size_t i = 0; i < br.values.values.size(); ++i)
        CHECK(br.values.values[i] ==
              doctest::Approx(attained.values[i]).epsilon(1e-9));

    // at the trivial boundary the conditional program is the global one
    const BestResponseAt at_root =
        best_response_at(t, pc, Player::one, opp, always_stop_at(t, 0));
    CHECK(at_root.values.values[0] ==
          doctest::Approx(best_response(t, pc, Player::one, opp).value)
              .epsilon(1e-12));
}

TEST_CASE("verify: stopping-time census") {
    CHECK(count_stopping_times(fixtures::det2_tree(), 1000) == 3);
    CHECK(count_stopping_times(fixtures::coin_tree(), 1000) == 5);
    CHECK(count_stopping_times(fixtures::const_tree(2), 1000) == 5);
    CHECK(count_stopping_times(fixtures::const_tree(2), 3) == 4);  // cap + 1 flags overflow
    // enumeration refuses to run past the cap
    const FilteredTree big = fixtures::const_tree(4);
    const PayoffField pk = fixtures::const_payoffs(big, 0.0, 0.0);
    CHECK_THROWS_AS(enumerate_best_response(big, pk, Player::one,
                                            fixtures::strategy_at(big, 1), 10),
                    std::invalid_argument);
}

TEST_CASE("verify: nash gaps") {
    SUBCASE("constant pair has none") {
        const FilteredTree t = fixtures::const_tree(3);
        const PayoffField pk = fixtures::const_payoffs(t, 1.0, -1.0);
        const GapReport gaps = nash_gap(t, pk, fixtures::strategy_at(t, 0),
                                        fixtures::strategy_at(t, 2));
        CHECK(gaps.gap1 == doctest::Approx(0.0));
        CHECK(gaps.gap2 == doctest::Approx(0.0));
        CHECK(gaps.value1 == doctest::Approx(1.0));
        CHECK(gaps.value2 == doctest::Approx(-1.0));
    }
    SUBCASE("gaps are non-negative and the witnesses attain them") {
        const Instance inst = fixtures::gen(81, 4, 3, false);
        const GapReport gaps =
            nash_gap(inst.tree, inst.payoffs, fixtures::strategy_at(inst.tree, 1),
                     fixtures::strategy_at(inst.tree, 2));
        CHECK(gaps.gap1 >= -1e-9);
        CHECK(gaps.gap2 >= -1e-9);
        CHECK(validate_strategy(inst.tree, gaps.best1).empty());
        CHECK(validate_strategy(inst.tree, gaps.best2).empty());
        const double v1 = evaluate_game(inst.tree, inst.payoffs, Player::one,
                                        gaps.best1, fixtures::strategy_at(inst.tree, 2));
        CHECK(v1 == doctest::Approx(gaps.value1 + gaps.gap1).epsilon(1e-9));
    }
}
