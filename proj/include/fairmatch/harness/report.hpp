#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairmatch/harness/stats.hpp"
#include "fairmatch/sim/simulator.hpp"

namespace fairmatch::harness {

// Races CSV, one row per contested opportunity:
//   stimulus_ns,instrument,policy,firms,arrivals_ns,winner,multi_participant
// `firms` and `arrivals_ns` are ';'-joined parallel lists, winner is empty
// when the opportunity went unfilled. All report numbers are recomputable
// from this file alone.
void write_races_csv(std::ostream& out, std::span<const sim::RaceRecord> races,
                     const std::string& policy_name);

struct CsvRace {
    Nanos stimulus_ns{0};
    InstrumentId instrument{0};
    std::string policy;
    std::vector<FirmId> firms;
    std::vector<Nanos> arrivals_ns;
    std::optional<FirmId> winner{};
    bool multi_participant{false};
};

std::vector<CsvRace> read_races_csv(std::istream& in);

// Rebuilds race records from CSV rows so fairness statistics can be
// recomputed without the simulator.
std::vector<sim::RaceRecord> races_from_csv(const std::vector<CsvRace>& rows);

void write_summary_text(std::ostream& out, const sim::ScenarioConfig& cfg,
                        const sim::SimResult& result, const FairnessReport& report);
nlohmann::json summary_json(const sim::ScenarioConfig& cfg, const sim::SimResult& result,
                            const FairnessReport& report);

}  // namespace fairmatch::harness
