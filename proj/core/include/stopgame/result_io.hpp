#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "stopgame/equilibrium.hpp"
#include "stopgame/instance.hpp"
#include "stopgame/stopping.hpp"
#include "stopgame/tree.hpp"
#include "stopgame/verify.hpp"

namespace stopgame {

// Machine-readable solve result ("stopgame-result/v1"): the strategy pair
// as node decision maps, the hitting times, the shift-condition ledger, the
// value processes, and a gap certificate against the mode's budget
// (5*epsilon zero-sum, 18*epsilon otherwise).  Byte-deterministic except
// for the generated_at line.
std::string result_to_json(const FilteredTree& tree,
                           const EquilibriumBundle& bundle,
                           const GapReport& gaps);

struct StrategyPair {
    StoppingStrategy rho;
    StoppingStrategy tau;
};

// Reads the "strategies" object of a solve result (or a bare document with
// the same shape).  Structural validation against a tree is the caller's
// job.  Throws ParseError.
StrategyPair strategies_from_json(const std::string& text,
                                  const std::string& context);
StrategyPair load_strategies(const std::filesystem::path& path);

// Verify report ("stopgame-verify/v1").  Pass gaps = nullptr when the pair
// failed structural validation; the violations are recorded instead.
std::string verify_report_to_json(double epsilon, const GapReport* gaps,
                                  const std::vector<std::string>& violations);

// Human rendering of a solve result document.  Deterministic (skips the
// timestamp).  Throws ParseError on documents of the wrong shape.
std::string render_result_summary(const std::string& result_json,
                                  const std::string& context);

// The stored certificate verdict of a solve result document.
bool result_certificate_pass(const std::string& result_json,
                             const std::string& context);

}  // namespace stopgame
