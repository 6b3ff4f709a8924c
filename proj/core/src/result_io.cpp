#include "stopgame/result_io.hpp"

#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stopgame {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
    throw ParseError(context + ": " + what);
}

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json stopping_time_to_json(const StoppingTime& sigma) {
    json out;
    out["min_level"] = sigma.min_level;
    json flags = json::array();
    for (std::uint8_t f : sigma.stop) flags.push_back(f ? 1 : 0);
    out["stop"] = std::move(flags);
    return out;
}

json strategy_to_json(const StoppingStrategy& s) {
    json out;
    out["first"] = stopping_time_to_json(s.first);
    json reaction = json::array();
    for (const StoppingTime& entry : s.reaction.entries)
        reaction.push_back(stopping_time_to_json(entry));
    out["reaction"] = std::move(reaction);
    return out;
}

double mean_level(const FilteredTree& tree, const StoppingTime& sigma) {
    const std::vector<int> times = realized_times(tree, sigma);
    double mean = 0.0;
    for (int s = 0; s < tree.scenario_count(); ++s)
        mean += tree.scenario_prob(s) * times[s];
    return mean;
}

StoppingTime stopping_time_from_json(const std::string& context, const json& j) {
    if (!j.is_object() || !j.contains("min_level") || !j.contains("stop"))
        fail(context, "stopping time needs \"min_level\" and \"stop\"");
    StoppingTime sigma;
    if (!j.at("min_level").is_number_integer())
        fail(context, "min_level is not an integer");
    sigma.min_level = j.at("min_level").get<int>();
    const json& flags = j.at("stop");
    if (!flags.is_array() || flags.empty())
        fail(context, "stop flags: expected a non-empty array");
    sigma.stop.reserve(flags.size());
    for (const json& f : flags) {
        if (!f.is_number_integer() || (f != 0 && f != 1))
            fail(context, "stop flags must be 0 or 1");
        sigma.stop.push_back(static_cast<std::uint8_t>(f.get<int>()));
    }
    return sigma;
}

StoppingStrategy strategy_from_json(const std::string& context, const json& j) {
    if (!j.is_object() || !j.contains("first") || !j.contains("reaction"))
        fail(context, "strategy needs \"first\" and \"reaction\"");
    StoppingStrategy s;
    s.first = stopping_time_from_json(context + ".first", j.at("first"));
    const json& reaction = j.at("reaction");
    if (!reaction.is_array() || reaction.empty())
        fail(context, "reaction: expected a non-empty array");
    int k = 0;
    for (const json& entry : reaction)
        s.reaction.entries.push_back(stopping_time_from_json(
            context + ".reaction[" + std::to_string(k++) + "]", entry));
    return s;
}

const json& field(const std::string& context, const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(context, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

}  // namespace

std::string result_to_json(const FilteredTree& tree,
                           const EquilibriumBundle& bundle,
                           const GapReport& gaps) {
    const bool zero_sum = bundle.mode == GameMode::zero_sum;
    const double factor = zero_sum ? 5.0 : 18.0;
    const double budget = factor * bundle.epsilon;

    json doc;
    doc["schema"] = "stopgame-result/v1";
    doc["generated_at"] = utc_now();
    doc["mode"] = zero_sum ? "zero-sum" : "nonzero-sum";
    doc["epsilon"] = bundle.epsilon;
    doc["delta_levels"] = bundle.delta_levels;
    doc["delta_time"] = bundle.delta_levels * tree.grid().step;
    doc["modulus_at_step"] = bundle.modulus_at_step;
    doc["step_condition_ok"] = bundle.step_condition_ok;

    doc["strategies"] = {{"rho", strategy_to_json(bundle.rho)},
                         {"tau", strategy_to_json(bundle.tau)}};

    if (bundle.hitting1 || bundle.hitting2) {
        json hitting = json::object();
        if (bundle.hitting1) {
            json h = stopping_time_to_json(*bundle.hitting1);
            h["mean_level"] = mean_level(tree, *bundle.hitting1);
            hitting["player1"] = std::move(h);
        }
        if (bundle.hitting2) {
            json h = stopping_time_to_json(*bundle.hitting2);
            h["mean_level"] = mean_level(tree, *bundle.hitting2);
            hitting["player2"] = std::move(h);
        }
        doc["hitting_times"] = std::move(hitting);
    }

    json values = json::object();
    if (bundle.saddle_value) values["saddle_value"] = *bundle.saddle_value;
    if (bundle.game_value1) {
        values["root_value1"] = bundle.game_value1->values.at(0);
        values["game_value1"] = bundle.game_value1->values;
    }
    if (bundle.game_value2) {
        values["root_value2"] = bundle.game_value2->values.at(0);
        values["game_value2"] = bundle.game_value2->values;
    }
    if (bundle.stop_now1) values["stop_now1"] = bundle.stop_now1->values;
    if (bundle.stop_now2) values["stop_now2"] = bundle.stop_now2->values;
    doc["values"] = std::move(values);

    if (bundle.delta) {
        json conditions = json::array();
        for (const DeltaCondition& c : bundle.delta->conditions) {
            json entry;
            entry["name"] = c.name;
            entry["measured"] = c.measured;
            entry["bound"] = c.bound;
            entry["pass"] = c.pass;
            conditions.push_back(std::move(entry));
        }
        doc["delta_conditions"] = std::move(conditions);
    }

    json certificate;
    certificate["bound_factor"] = factor;
    certificate["budget"] = budget;
    certificate["gap1"] = gaps.gap1;
    certificate["gap2"] = gaps.gap2;
    certificate["value1"] = gaps.value1;
    certificate["value2"] = gaps.value2;
    certificate["best_response1"] = gaps.value1 + gaps.gap1;
    certificate["best_response2"] = gaps.value2 + gaps.gap2;
    certificate["pass"] = gaps.worst() <= budget + 1e-12;
    doc["certificate"] = std::move(certificate);

    return doc.dump(2) + "\n";
}

StrategyPair strategies_from_json(const std::string& text,
                                  const std::string& context) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(context, e.what());
    }
    const json& strategies = field(context, doc, "strategies");
    StrategyPair pair;
    pair.rho = strategy_from_json(context + ": strategies.rho",
                                  field(context, strategies, "rho"));
    pair.tau = strategy_from_json(context + ": strategies.tau",
                                  field(context, strategies, "tau"));
    return pair;
}

StrategyPair load_strategies(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string() + ": cannot open");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return strategies_from_json(buffer.str(), path.string());
}

std::string verify_report_to_json(double epsilon, const GapReport* gaps,
                                  const std::vector<std::string>& violations) {
    json doc;
    doc["schema"] = "stopgame-verify/v1";
    doc["generated_at"] = utc_now();
    doc["epsilon"] = epsilon;
    doc["valid"] = violations.empty();
    doc["violations"] = violations;
    if (gaps) {
        doc["gap1"] = gaps->gap1;
        doc["gap2"] = gaps->gap2;
        doc["value1"] = gaps->value1;
        doc["value2"] = gaps->value2;
        doc["best_response1"] = gaps->value1 + gaps->gap1;
        doc["best_response2"] = gaps->value2 + gaps->gap2;
        doc["pass"] = violations.empty() && gaps->worst() <= epsilon + 1e-12;
    } else {
        doc["pass"] = false;
    }
    return doc.dump(2) + "\n";
}

std::string render_result_summary(const std::string& result_json,
                                  const std::string& context) {
    json doc;
    try {
        doc = json::parse(result_json);
    } catch (const json::parse_error& e) {
        fail(context, e.what());
    }
    const json& schema = field(context, doc, "schema");
    if (!schema.is_string() || schema.get<std::string>() != "stopgame-result/v1")
        fail(context, "unsupported schema (want \"stopgame-result/v1\")");

    std::ostringstream out;
    const std::string mode = field(context, doc, "mode").get<std::string>();
    out << "mode: " << mode << "\n";
    out << "epsilon: " << field(context, doc, "epsilon").get<double>() << "\n";
    out << "delta: " << field(context, doc, "delta_levels").get<int>()
        << " level(s), " << field(context, doc, "delta_time").get<double>()
        << " time units\n";
    out << "modulus at one step: "
        << field(context, doc, "modulus_at_step").get<double>()
        << " (epsilon/3 condition: "
        << (field(context, doc, "step_condition_ok").get<bool>() ? "ok" : "VIOLATED")
        << ")\n";

    const json& values = field(context, doc, "values");
    if (values.contains("saddle_value"))
        out << "saddle value: " << values.at("saddle_value").get<double>() << "\n";
    if (values.contains("root_value1"))
        out << "root game value, player 1: "
            << values.at("root_value1").get<double>() << "\n";
    if (values.contains("root_value2"))
        out << "root game value, player 2: "
            << values.at("root_value2").get<double>() << "\n";

    if (doc.contains("hitting_times")) {
        const json& hitting = doc.at("hitting_times");
        if (hitting.contains("player1"))
            out << "hitting time, player 1: mean level "
                << hitting.at("player1").at("mean_level").get<double>() << "\n";
        if (hitting.contains("player2"))
            out << "hitting time, player 2: mean level "
                << hitting.at("player2").at("mean_level").get<double>() << "\n";
    }

    const json& cert = field(context, doc, "certificate");
    out << "certificate: gap1 = " << cert.at("gap1").get<double>()
        << ", gap2 = " << cert.at("gap2").get<double>() << ", budget "
        << cert.at("bound_factor").get<double>() << " * epsilon = "
        << cert.at("budget").get<double>() << " -> "
        << (cert.at("pass").get<bool>() ? "PASS" : "FAIL") << "\n";

    if (doc.contains("delta_conditions")) {
        out << "shift conditions (diagnostic):\n";
        for (const json& c : doc.at("delta_conditions"))
            out << "  [" << (c.at("pass").get<bool>() ? "pass" : "FAIL") << "] "
                << c.at("name").get<std::string>() << ": measured "
                << c.at("measured").get<double>() << ", bound "
                << c.at("bound").get<double>() << "\n";
    }
    return out.str();
}

bool result_certificate_pass(const std::string& result_json,
                             const std::string& context) {
    json doc;
    try {
        doc = json::parse(result_json);
    } catch (const json::parse_error& e) {
        fail(context, e.what());
    }
    const json& cert = field(context, doc, "certificate");
    const json& pass = field(context + ": certificate", cert, "pass");
    if (!pass.is_boolean()) fail(context, "certificate.pass is not a boolean");
    return pass.get<bool>();
}

}  // namespace stopgame
