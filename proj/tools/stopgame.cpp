// stopgame CLI: generate | solve | verify | report.
// Exit codes: 0 pass, 1 gap exceeded, 2 invalid input.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stopgame/equilibrium.hpp"
#include "stopgame/generator.hpp"
#include "stopgame/instance.hpp"
#include "stopgame/result_io.hpp"
#include "stopgame/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitGap = 1;
constexpr int kExitInvalid = 2;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw stopgame::ParseError(path + ": cannot open for writing");
    out << text;
    if (!out) throw stopgame::ParseError(path + ": write failed");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw stopgame::ParseError(path + ": cannot open");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

stopgame::GameMode resolve_mode(const std::optional<std::string>& flag,
                                const stopgame::Instance& instance) {
    if (flag) {
        if (*flag == "zero-sum") return stopgame::GameMode::zero_sum;
        if (*flag == "nonzero-sum") return stopgame::GameMode::nonzero_sum;
        throw stopgame::ParseError("--mode must be zero-sum or nonzero-sum");
    }
    if (instance.meta.mode && *instance.meta.mode == "zero-sum")
        return stopgame::GameMode::zero_sum;
    return stopgame::GameMode::nonzero_sum;
}

int run_generate(const stopgame::GeneratorParams& params,
                 const std::string& out_path) {
    stopgame::Instance instance = stopgame::generate_instance(params);
    const std::string text = stopgame::instance_to_json(instance);
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return kExitPass;
}

int run_solve(const std::string& instance_path, std::optional<double> epsilon,
              int delta_levels, const std::optional<std::string>& mode_flag,
              const std::string& out_path) {
    stopgame::Instance instance = stopgame::load_instance(instance_path);
    const stopgame::GameMode mode = resolve_mode(mode_flag, instance);

    double eps = epsilon.value_or(0.0);
    if (!epsilon) {
        // Auto: smallest epsilon comfortably satisfying the one-step
        // modulus precondition r(h) < epsilon/3.
        const stopgame::Modulus r =
            stopgame::empirical_modulus(instance.tree, instance.payoffs);
        eps = std::max(3.5 * r.at_levels(1), 1e-3);
    }

    stopgame::EquilibriumBundle bundle =
        mode == stopgame::GameMode::zero_sum
            ? stopgame::assemble_zero_sum(instance.tree, instance.payoffs, eps)
            : stopgame::assemble_nonzero_sum(instance.tree, instance.payoffs,
                                             eps, delta_levels);
    stopgame::GapReport gaps =
        stopgame::nash_gap(instance.tree, instance.payoffs, bundle.rho, bundle.tau);

    const std::string result = result_to_json(instance.tree, bundle, gaps);
    const std::string summary = stopgame::render_result_summary(result, "solve");
    if (out_path.empty()) {
        std::cout << result;
        std::cerr << summary;
    } else {
        write_file(out_path, result);
        std::cout << summary;
    }

    const double budget =
        (mode == stopgame::GameMode::zero_sum ? 5.0 : 18.0) * eps;
    return gaps.worst() <= budget + 1e-12 ? kExitPass : kExitGap;
}

int run_verify(const std::string& instance_path,
               const std::string& strategies_path, double epsilon,
               const std::string& out_path) {
    stopgame::Instance instance = stopgame::load_instance(instance_path);

    std::vector<std::string> violations;
    std::optional<stopgame::StrategyPair> pair;
    try {
        pair = stopgame::load_strategies(strategies_path);
    } catch (const stopgame::ParseError& e) {
        violations.push_back(e.what());
    }
    if (pair) {
        for (const std::string& v :
             stopgame::validate_strategy(instance.tree, pair->rho))
            violations.push_back("rho: " + v);
        for (const std::string& v :
             stopgame::validate_strategy(instance.tree, pair->tau))
            violations.push_back("tau: " + v);
    }

    std::string report;
    int code = kExitInvalid;
    if (!violations.empty()) {
        report = stopgame::verify_report_to_json(epsilon, nullptr, violations);
    } else {
        stopgame::GapReport gaps = stopgame::nash_gap(
            instance.tree, instance.payoffs, pair->rho, pair->tau);
        report = stopgame::verify_report_to_json(epsilon, &gaps, {});
        code = gaps.worst() <= epsilon + 1e-12 ? kExitPass : kExitGap;
    }

    if (out_path.empty())
        std::cout << report;
    else
        write_file(out_path, report);
    if (!violations.empty())
        for (const std::string& v : violations) std::cerr << v << "\n";
    return code;
}

int run_report(const std::string& result_path) {
    const std::string text = slurp(result_path);
    std::cout << stopgame::render_result_summary(text, result_path);
    // Mirror the stored certificate in the exit code.
    return stopgame::result_certificate_pass(text, result_path) ? kExitPass
                                                                : kExitGap;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Constructive epsilon-Nash equilibria for two-player stopping games "
        "on finite scenario trees"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a random instance");
    stopgame::GeneratorParams params;
    std::optional<std::string> gen_mode;
    std::string gen_out;
    gen->add_option("--seed", params.seed, "RNG seed");
    gen->add_option("--horizon", params.horizon, "Number of grid steps N")
        ->check(CLI::PositiveNumber);
    gen->add_option("--step", params.step, "Grid step h")
        ->check(CLI::PositiveNumber);
    gen->add_option("--branching", params.max_branching,
                    "Maximum children per node")
        ->check(CLI::PositiveNumber);
    gen->add_option("--lipschitz", params.lipschitz,
                    "Payoff continuity target: r(d) <= lipschitz * d")
        ->check(CLI::NonNegativeNumber);
    gen->add_option("--scale", params.scale, "Payoff bound M")
        ->check(CLI::PositiveNumber);
    gen->add_option("--mode", gen_mode, "zero-sum | nonzero-sum");
    gen->add_option("--out", gen_out, "Output path (default: stdout)");

    // solve
    auto* solve = app.add_subcommand(
        "solve", "Construct an equilibrium pair and certify its gaps");
    std::string solve_instance;
    std::optional<double> solve_eps;
    int solve_delta = 1;
    std::optional<std::string> solve_mode;
    std::string solve_out;
    solve->add_option("instance", solve_instance, "Instance file")->required();
    solve->add_option("--epsilon", solve_eps,
                      "Accuracy target (default: from the payoff modulus)");
    solve->add_option("--delta", solve_delta,
                      "Restart shift in grid levels (nonzero-sum)")
        ->check(CLI::PositiveNumber);
    solve->add_option("--mode", solve_mode,
                      "zero-sum | nonzero-sum (default: instance metadata)");
    solve->add_option("--out", solve_out, "Result path (default: stdout)");

    // verify
    auto* verify = app.add_subcommand(
        "verify", "Check a strategy pair's Nash gaps against epsilon");
    std::string verify_instance, verify_strategies, verify_out;
    double verify_eps = 0.0;
    verify->add_option("instance", verify_instance, "Instance file")->required();
    verify->add_option("strategies", verify_strategies,
                       "Strategy file (e.g. a solve result)")
        ->required();
    verify->add_option("--epsilon", verify_eps, "Gap budget")->required();
    verify->add_option("--out", verify_out, "Report path (default: stdout)");

    // report
    auto* report = app.add_subcommand("report", "Render a solve result");
    std::string report_path;
    report->add_option("result", report_path, "Result file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (gen_mode) {
                if (*gen_mode != "zero-sum" && *gen_mode != "nonzero-sum")
                    throw stopgame::ParseError(
                        "--mode must be zero-sum or nonzero-sum");
                params.zero_sum = *gen_mode == "zero-sum";
            }
            return run_generate(params, gen_out);
        }
        if (solve->parsed())
            return run_solve(solve_instance, solve_eps, solve_delta, solve_mode,
                             solve_out);
        if (verify->parsed())
            return run_verify(verify_instance, verify_strategies, verify_eps,
                              verify_out);
        if (report->parsed()) return run_report(report_path);
    } catch (const stopgame::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::logic_error& e) {
        std::cerr << "internal contract violation: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
