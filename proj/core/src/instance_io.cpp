#include "stopgame/instance.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace stopgame {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& context, const std::string& what) {
    throw ParseError(context + ": " + what);
}

const json& field(const std::string& context, const json& j,
                  const char* key) {
    if (!j.is_object() || !j.contains(key))
        fail(context, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

double number_field(const std::string& context, const json& j,
                    const char* key) {
    const json& v = field(context, j, key);
    if (!v.is_number())
        fail(context, std::string("field \"") + key + "\" is not a number");
    return v.get<double>();
}

int int_field(const std::string& context, const json& j, const char* key) {
    const json& v = field(context, j, key);
    if (!v.is_number_integer())
        fail(context, std::string("field \"") + key + "\" is not an integer");
    return v.get<int>();
}

json slices_to_json(const FilteredTree& tree, const PayoffField& payoffs,
                    Player p) {
    const int n = tree.grid().horizon;
    json out = json::array();
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            json entry;
            entry["stop1"] = j;
            entry["stop2"] = k;
            json values = json::array();
            for (double v : payoffs.slice(p, j, k)) values.push_back(v);
            entry["values"] = std::move(values);
            out.push_back(std::move(entry));
        }
    return out;
}

std::vector<std::vector<double>> slices_from_json(const std::string& context,
                                                  const FilteredTree& tree,
                                                  const json& arr,
                                                  const char* which) {
    const int n = tree.grid().horizon;
    const int total = (n + 1) * (n + 1);
    if (!arr.is_array() || static_cast<int>(arr.size()) != total)
        fail(context, std::string(which) + ": expected " +
                          std::to_string(total) + " payoff slices");
    std::vector<std::vector<double>> slices(total);
    std::vector<bool> seen(total, false);
    for (const json& entry : arr) {
        const std::string locus = context + ": " + which;
        const int j = int_field(locus, entry, "stop1");
        const int k = int_field(locus, entry, "stop2");
        if (j < 0 || j > n || k < 0 || k > n)
            fail(locus, "stop levels (" + std::to_string(j) + ", " +
                            std::to_string(k) + ") out of range");
        const int idx = j * (n + 1) + k;
        if (seen[idx])
            fail(locus, "duplicate slice (" + std::to_string(j) + ", " +
                            std::to_string(k) + ")");
        seen[idx] = true;
        const json& values = field(locus, entry, "values");
        const int want = tree.level_size(j > k ? j : k);
        if (!values.is_array() || static_cast<int>(values.size()) != want)
            fail(locus, "slice (" + std::to_string(j) + ", " +
                            std::to_string(k) + "): expected " +
                            std::to_string(want) + " values");
        slices[idx].reserve(want);
        for (const json& v : values) {
            if (!v.is_number())
                fail(locus, "slice (" + std::to_string(j) + ", " +
                                std::to_string(k) + "): non-numeric value");
            slices[idx].push_back(v.get<double>());
        }
    }
    return slices;
}

}  // namespace

std::string instance_to_json(const Instance& instance) {
    const FilteredTree& tree = instance.tree;
    json doc;
    doc["schema"] = "stopgame/v1";
    doc["grid"] = {{"step", tree.grid().step},
                   {"horizon", tree.grid().horizon}};
    json nodes = json::array();
    for (int id = 0; id < tree.node_count(); ++id) {
        json node;
        node["id"] = id;
        node["level"] = tree.level_of(id);
        node["parent"] = tree.parent_of(id);
        node["prob"] = tree.edge_prob(id);
        nodes.push_back(std::move(node));
    }
    doc["nodes"] = std::move(nodes);
    doc["payoffs"] = {
        {"player1", slices_to_json(tree, instance.payoffs, Player::one)},
        {"player2", slices_to_json(tree, instance.payoffs, Player::two)}};
    json meta = json::object();
    if (instance.meta.seed) meta["seed"] = *instance.meta.seed;
    if (instance.meta.lipschitz) meta["lipschitz"] = *instance.meta.lipschitz;
    if (instance.meta.mode) meta["mode"] = *instance.meta.mode;
    if (!meta.empty()) doc["metadata"] = std::move(meta);
    return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text,
                            const std::string& context) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(context, e.what());
    }
    if (!doc.is_object()) fail(context, "top level is not an object");
    const json& schema = field(context, doc, "schema");
    if (!schema.is_string() || schema.get<std::string>() != "stopgame/v1")
        fail(context, "unsupported schema (want \"stopgame/v1\")");

    const json& grid_json = field(context, doc, "grid");
    GridSpec grid;
    grid.step = number_field(context + ": grid", grid_json, "step");
    grid.horizon = int_field(context + ": grid", grid_json, "horizon");
    if (!(grid.step > 0.0) || grid.horizon < 0)
        fail(context, "grid: step must be positive, horizon non-negative");

    const json& nodes_json = field(context, doc, "nodes");
    if (!nodes_json.is_array() || nodes_json.empty())
        fail(context, "nodes: expected a non-empty array");
    std::vector<NodeSpec> nodes;
    std::vector<int> levels;
    nodes.reserve(nodes_json.size());
    for (const json& entry : nodes_json) {
        const int id = static_cast<int>(nodes.size());
        const std::string locus = context + ": node " + std::to_string(id);
        if (int_field(locus, entry, "id") != id)
            fail(locus, "ids must be consecutive from 0");
        NodeSpec spec;
        spec.parent = int_field(locus, entry, "parent");
        spec.edge_prob = number_field(locus, entry, "prob");
        levels.push_back(int_field(locus, entry, "level"));
        nodes.push_back(spec);
    }

    FilteredTree tree = [&] {
        try {
            return FilteredTree(grid, std::move(nodes));
        } catch (const std::invalid_argument& e) {
            fail(context, e.what());
        }
    }();
    for (int id = 0; id < tree.node_count(); ++id)
        if (levels[id] != tree.level_of(id))
            fail(context, "node " + std::to_string(id) +
                              ": declared level " + std::to_string(levels[id]) +
                              " does not match tree depth " +
                              std::to_string(tree.level_of(id)));

    const json& payoffs_json = field(context, doc, "payoffs");
    std::array<std::vector<std::vector<double>>, 2> slices = {
        slices_from_json(context, tree,
                         field(context, payoffs_json, "player1"), "player1"),
        slices_from_json(context, tree,
                         field(context, payoffs_json, "player2"), "player2")};

    InstanceMetadata meta;
    if (doc.contains("metadata")) {
        const json& m = doc.at("metadata");
        if (!m.is_object()) fail(context, "metadata is not an object");
        if (m.contains("seed")) {
            if (!m.at("seed").is_number_unsigned())
                fail(context, "metadata: seed is not an unsigned integer");
            meta.seed = m.at("seed").get<std::uint64_t>();
        }
        if (m.contains("lipschitz"))
            meta.lipschitz = number_field(context + ": metadata", m, "lipschitz");
        if (m.contains("mode")) {
            const json& mode = m.at("mode");
            if (!mode.is_string() || (mode != "zero-sum" && mode != "nonzero-sum"))
                fail(context,
                     "metadata: mode must be \"zero-sum\" or \"nonzero-sum\"");
            meta.mode = mode.get<std::string>();
        }
    }

    PayoffField payoffs = [&] {
        try {
            return PayoffField(tree, std::move(slices));
        } catch (const std::invalid_argument& e) {
            fail(context, e.what());
        }
    }();
    return Instance{std::move(tree), std::move(payoffs), std::move(meta)};
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string() + ": cannot open");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json(buffer.str(), path.string());
}

void save_instance(const Instance& instance,
                   const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path.string() + ": cannot open for writing");
    out << instance_to_json(instance);
    if (!out) throw ParseError(path.string() + ": write failed");
}

}  // namespace stopgame
