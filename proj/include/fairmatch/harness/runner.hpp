#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fairmatch/harness/report.hpp"
#include "fairmatch/harness/scenario_config.hpp"
#include "fairmatch/harness/stats.hpp"

namespace fairmatch::harness {

struct RunResult {
    sim::ScenarioConfig cfg;  // effective config after overrides
    sim::SimResult result;    // merged over replicas
    FairnessReport fairness;
    std::vector<std::filesystem::path> written;
};

// Runs the scenario (fanning replicas out across threads when configured),
// merges results in replica order, computes the fairness report, and writes
// whatever outputs the config requests. Replica fan-out and sequential
// execution of the same seed list produce identical merged statistics.
RunResult run_config(sim::ScenarioConfig cfg, const RunOverrides& overrides = {},
                     std::ostream* console = nullptr);

RunResult run_scenario_file(const std::filesystem::path& path,
                            const RunOverrides& overrides = {},
                            std::ostream* console = nullptr);

struct SweepRow {
    Nanos timer_ns{0};
    std::uint64_t races{0};
    std::uint64_t multi_participant_races{0};
    Quantity contested_quantity{0};  // total quantity in contested races
};

// Reruns the base scenario once per timer value with identical population and
// seeds, so the sweep isolates the batch length. Rows come back in input order.
std::vector<SweepRow> sweep_batch_length(const sim::ScenarioConfig& base,
                                         const std::vector<Nanos>& timer_values);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct AttackConfig {
    std::vector<std::string> attacks;   // duplicates | placeholding | sybil | sniping
    std::vector<std::string> policies;  // policies to test each attack against
    std::uint64_t races{50'000};
    std::uint64_t seed{1};
    double tolerance{0.02};
};

AttackConfig default_attack_config();
AttackConfig attack_config_from_json(const nlohmann::json& j);

struct AttackOutcome {
    std::string attack;
    std::string policy;
    std::map<std::string, double> metrics;
    double tolerance{0.02};
    std::string verdict;  // vulnerable | resistant | protective | not-applicable
    std::string detail;
};

std::vector<AttackOutcome> attack_battery(const AttackConfig& cfg);
void write_attack_table(std::ostream& out, const std::vector<AttackOutcome>& outcomes);
nlohmann::json attack_outcomes_json(const std::vector<AttackOutcome>& outcomes);

// Re-drives a logged forwarded-order stream through a fresh matching engine
// and checks the produced fills against the logged ones, plus conservation
// and at-best-price execution. Returns 0 when the log replays cleanly.
int replay_event_log(const std::filesystem::path& path, std::ostream& diagnostics);

// Scenario builders shared by the CLI battery and the test suites.
sim::ScenarioConfig make_taker_race_scenario(const std::string& policy_kind, Nanos dtau_ns,
                                             std::uint64_t races, std::uint64_t seed);
sim::ScenarioConfig make_equalization_scenario(Nanos timer_ns, Nanos fast_latency_ns,
                                               Nanos slow_latency_ns, std::uint64_t races,
                                               std::uint64_t seed);
sim::ScenarioConfig make_duplicates_scenario(const std::string& policy_kind, int duplicates,
                                             std::uint64_t races, std::uint64_t seed);
sim::ScenarioConfig make_placeholding_scenario(std::int64_t placeholder_offset_ticks,
                                               std::uint64_t races, std::uint64_t seed);
sim::ScenarioConfig make_sybil_scenario(bool merged, std::uint64_t races, std::uint64_t seed);
sim::ScenarioConfig make_sniping_scenario(bool cancel_exemption, std::uint64_t races,
                                          std::uint64_t seed);
sim::ScenarioConfig make_sweep_base_scenario(std::uint64_t races, std::uint64_t seed);

}  // namespace fairmatch::harness
