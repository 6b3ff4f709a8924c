#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "stopgame/dynkin.hpp"
#include "stopgame/envelopes.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace stopgame;

namespace {

// DET2 band triple: lower band t, upper band 2, tie t.
struct ChainBands {
    AdaptedProcess x{{0.0, 1.0, 2.0}};
    AdaptedProcess y{{2.0, 2.0, 2.0}};
    AdaptedProcess z{{0.0, 1.0, 2.0}};
};

void check_saddle(const FilteredTree& t, const AdaptedProcess& x,
                  const AdaptedProcess& y, const AdaptedProcess& z,
                  const DynkinSolution& sol) {
    const std::vector<int> rho_star = oracle::walk_all(t, sol.rho_stop);
    const std::vector<int> tau_star = oracle::walk_all(t, sol.tau_stop);
    const double v = sol.root_value();
    CHECK(oracle::band_payoff_direct(t, x, y, z, rho_star, tau_star) ==
          doctest::Approx(v).epsilon(1e-9));
    const bool rho_max = sol.sup_player == Stopper::rho;
    oracle::for_each_stopping_map(t, 0, [&](const std::vector<int>& dev) {
        const double vs_tau = oracle::band_payoff_direct(t, x, y, z, dev, tau_star);
        const double vs_rho = oracle::band_payoff_direct(t, x, y, z, rho_star, dev);
        if (rho_max) {
            CHECK(vs_tau <= v + 1e-9);  // maximizer cannot gain against tau*
            CHECK(vs_rho >= v - 1e-9);  // minimizer cannot push below v
        } else {
            CHECK(vs_rho <= v + 1e-9);
            CHECK(vs_tau >= v - 1e-9);
        }
    });
}

}  // namespace

TEST_CASE("dynkin: settlement of pure pairs") {
    const FilteredTree t = fixtures::det2_tree();
    const ChainBands b;
    CHECK(band_game_value(t, b.x, b.y, b.z, always_stop_at(t, 2),
                          always_stop_at(t, 0)) == doctest::Approx(2.0));
    CHECK(band_game_value(t, b.x, b.y, b.z, always_stop_at(t, 1),
                          always_stop_at(t, 1)) == doctest::Approx(1.0));
    CHECK(band_game_value(t, b.x, b.y, b.z, always_stop_at(t, 0),
                          always_stop_at(t, 2)) == doctest::Approx(0.0));
}

TEST_CASE("dynkin: chain game has value 2 with hand-checkable saddle") {
    const FilteredTree t = fixtures::det2_tree();
    const ChainBands b;
    const DynkinSolution sol = solve_dynkin(t, b.x, b.y, b.z, Stopper::rho);
    for (int node = 0; node < 3; ++node)
        CHECK(sol.value.at(node) == doctest::Approx(2.0));
    CHECK(realized_time(t, sol.rho_stop, 0) == 2);
    CHECK(realized_time(t, sol.tau_stop, 0) == 0);

    const oracle::DynkinBrute brute =
        oracle::dynkin_by_enumeration(t, b.x, b.y, b.z, Stopper::rho);
    CHECK(brute.sup_inf == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(brute.inf_sup == doctest::Approx(2.0).epsilon(1e-12));
    check_saddle(t, b.x, b.y, b.z, sol);
}

TEST_CASE("dynkin: band ordering is a precondition") {
    const FilteredTree t = fixtures::det2_tree();
    // tie below both bands: not a valid configuration for either orientation
    const AdaptedProcess x{{1.0, 1.0, 2.0}};
    const AdaptedProcess y{{3.0, 3.0, 3.0}};
    const AdaptedProcess z{{-1.0, -1.0, 2.0}};
    CHECK_THROWS_AS(solve_dynkin(t, x, y, z, Stopper::rho), std::invalid_argument);
}

TEST_CASE("dynkin: DP value equals brute force on small instances") {
    int done = 0;
    for (std::uint64_t seed = 1; done < 6 && seed < 60; ++seed) {
        const Instance inst = fixtures::gen(seed, 2, 2, seed % 2 == 0);
        if (inst.tree.node_count() > 12) continue;
        ++done;
        const EnvelopeSet env = build_envelopes(inst.tree, inst.payoffs);
        for (Player p : {Player::one, Player::two}) {
            const Stopper sup = p == Player::one ? Stopper::rho : Stopper::tau;
            const PlayerEnvelopes& e = env.of(p);
            const DynkinSolution sol = solve_dynkin(
                inst.tree, e.after_rho_stop, e.after_tau_stop, e.tie_value, sup);
            const oracle::DynkinBrute brute = oracle::dynkin_by_enumeration(
                inst.tree, e.after_rho_stop, e.after_tau_stop, e.tie_value, sup);
            CHECK(sol.root_value() == doctest::Approx(brute.sup_inf).epsilon(1e-9));
            CHECK(sol.root_value() == doctest::Approx(brute.inf_sup).epsilon(1e-9));
            check_saddle(inst.tree, e.after_rho_stop, e.after_tau_stop,
                         e.tie_value, sol);
        }
    }
    CHECK(done == 6);
}

TEST_CASE("dynkin: boundary values restate the sub-game") {
    const FilteredTree t = fixtures::coin_tree();
    const PayoffField pc = fixtures::coin_payoffs(t);
    const EnvelopeSet env = build_envelopes(t, pc);
    const PlayerEnvelopes& e = env.of(Player::one);
    const DynkinSolution sol =
        solve_dynkin(t, e.after_rho_stop, e.after_tau_stop, e.tie_value, Stopper::rho);
    const StoppingTime sigma = always_stop_at(t, 1);
    const BoundaryValues bv = subgame_value_at(t, sol, sigma);
    REQUIRE(bv.nodes.size() == 2);
    for (std::size_t i = 0; i < bv.nodes.size(); ++i) {
        const double direct = oracle::subgame_value_by_enumeration(
            t, e.after_rho_stop, e.after_tau_stop, e.tie_value, Stopper::rho,
            bv.nodes[i]);
        CHECK(bv.values[i] == doctest::Approx(direct).epsilon(1e-9));
    }
    // the boundary values are the value process at the boundary nodes
    for (std::size_t i = 0; i < bv.nodes.size(); ++i)
        CHECK(bv.values[i] == doctest::Approx(sol.value.at(bv.nodes[i])));
}

TEST_CASE("dynkin: value drift before the epsilon-hit") {
    const FilteredTree t = fixtures::det2_tree();
    const ChainBands b;
    const DynkinSolution sol = solve_dynkin(t, b.x, b.y, b.z, Stopper::rho);
    const double eps = 0.5;
    std::vector<std::uint8_t> region(t.node_count(), 0);
    for (int node = 0; node < t.node_count(); ++node)
        if (sol.value.at(node) <= b.x.at(node) + eps) region[node] = 1;
    const StoppingTime mu = first_entry(t, region, 0);
    CHECK(submartingale_slack(t, sol.value, mu) >= -1e-12);

    // constant value process drifts by exactly zero
    const AdaptedProcess flat{std::vector<double>(t.node_count(), 3.0)};
    CHECK(submartingale_slack(t, flat, always_stop_at(t, 2)) ==
          doctest::Approx(0.0));
}
