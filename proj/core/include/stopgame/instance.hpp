#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "stopgame/payoff.hpp"
#include "stopgame/tree.hpp"

namespace stopgame {

struct InstanceMetadata {
    std::optional<std::uint64_t> seed;
    std::optional<double> lipschitz;
    std::optional<std::string> mode;  // "zero-sum" | "nonzero-sum"
};

// A complete problem: grid, scenario tree, and two-player payoff field.
struct Instance {
    FilteredTree tree;
    PayoffField payoffs;
    InstanceMetadata meta;
};

// Raised on malformed files, with a field or line locus in the message.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical "stopgame/v1" JSON: stable key order, level-major node ids,
// shortest round-trip number formatting.  save(load(f)) reproduces a
// canonical f byte for byte.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text, const std::string& context);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace stopgame
