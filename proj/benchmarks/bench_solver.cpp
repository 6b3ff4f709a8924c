#include <benchmark/benchmark.h>

#include <map>

#include "stopgame/envelopes.hpp"
#include "stopgame/equilibrium.hpp"
#include "stopgame/generator.hpp"
#include "stopgame/instance.hpp"
#include "stopgame/verify.hpp"

using namespace stopgame;

namespace {

const Instance& instance_for(int horizon) {
    static std::map<int, Instance> cache;
    auto it = cache.find(horizon);
    if (it == cache.end()) {
        GeneratorParams params;
        params.seed = 7;
        params.horizon = horizon;
        params.step = 0.25;
        params.max_branching = 3;
        it = cache.emplace(horizon, generate_instance(params)).first;
    }
    return it->second;
}

void bm_build_envelopes(benchmark::State& state) {
    const Instance& inst = instance_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        EnvelopeSet env = build_envelopes(inst.tree, inst.payoffs);
        benchmark::DoNotOptimize(env);
    }
    state.SetLabel(std::to_string(inst.tree.node_count()) + " nodes");
}
BENCHMARK(bm_build_envelopes)->Arg(4)->Arg(6)->Arg(8);

void bm_solve_dynkin(benchmark::State& state) {
    const Instance& inst = instance_for(static_cast<int>(state.range(0)));
    const EnvelopeSet env = build_envelopes(inst.tree, inst.payoffs);
    const PlayerEnvelopes& e = env.of(Player::one);
    for (auto _ : state) {
        DynkinSolution sol = solve_dynkin(inst.tree, e.after_rho_stop,
                                          e.after_tau_stop, e.tie_value,
                                          Stopper::rho);
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(bm_solve_dynkin)->Arg(4)->Arg(6)->Arg(8);

void bm_assemble_nonzero_sum(benchmark::State& state) {
    const Instance& inst = instance_for(static_cast<int>(state.range(0)));
    const Modulus r = empirical_modulus(inst.tree, inst.payoffs);
    const double eps = std::max(3.5 * r.at_levels(1), 1e-3);
    for (auto _ : state) {
        EquilibriumBundle bundle =
            assemble_nonzero_sum(inst.tree, inst.payoffs, eps, 1);
        benchmark::DoNotOptimize(bundle);
    }
}
BENCHMARK(bm_assemble_nonzero_sum)->Arg(4)->Arg(6);

void bm_best_response(benchmark::State& state) {
    const Instance& inst = instance_for(static_cast<int>(state.range(0)));
    const Modulus r = empirical_modulus(inst.tree, inst.payoffs);
    const double eps = std::max(3.5 * r.at_levels(1), 1e-3);
    const EquilibriumBundle bundle =
        assemble_nonzero_sum(inst.tree, inst.payoffs, eps, 1);
    for (auto _ : state) {
        BestResponse br =
            best_response(inst.tree, inst.payoffs, Player::one, bundle.tau);
        benchmark::DoNotOptimize(br);
    }
}
BENCHMARK(bm_best_response)->Arg(4)->Arg(6);

void bm_instance_round_trip(benchmark::State& state) {
    const Instance& inst = instance_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        std::string text = instance_to_json(inst);
        Instance back = instance_from_json(text, "bench");
        benchmark::DoNotOptimize(back);
    }
}
BENCHMARK(bm_instance_round_trip)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
