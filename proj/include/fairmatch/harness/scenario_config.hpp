#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fairmatch/sim/scenario.hpp"

namespace fairmatch::harness {

// Raised for unreadable, unparsable, or invalid configs. Parse errors carry
// the position nlohmann reports; validation errors name the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Command-line overrides applied after the file is parsed.
struct RunOverrides {
    std::optional<std::uint64_t> seed{};
    std::optional<std::uint64_t> races{};
    std::optional<std::string> policy{};
    std::optional<Nanos> timer_ns{};  // retargets the active policy's main duration
    std::optional<std::string> out_dir{};
    bool quiet{false};
};

sim::ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const sim::ScenarioConfig& cfg);

// Loads, applies overrides, and validates; throws ConfigError on any problem.
sim::ScenarioConfig load_scenario(const std::filesystem::path& path,
                                  const RunOverrides& overrides = {});

void apply_overrides(sim::ScenarioConfig& cfg, const RunOverrides& overrides);

}  // namespace fairmatch::harness
