#pragma once

#include <map>
#include <span>
#include <vector>

#include "fairmatch/sim/simulator.hpp"

namespace fairmatch::harness {

// Wilson score interval for a binomial proportion at z standard deviations.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t n,
                                          double z = 1.96);

struct FirmStat {
    FirmId firm{0};
    Nanos expected_latency_ns{0};
    std::uint64_t races{0};
    std::uint64_t wins{0};
    double win_rate{0.0};
};

// One ordered (slower, faster) pair: how often the slower firm captured the
// opportunity in races where both competed.
struct PairStat {
    FirmId slower{0};
    FirmId faster{0};
    std::uint64_t races{0};
    std::uint64_t slower_wins{0};
    double frequency{0.0};
    double ci_lo{0.0};
    double ci_hi{0.0};
    double bound{0.5};
    double tolerance{0.02};
    bool pass{true};  // frequency <= bound + tolerance
};

struct FairnessReport {
    std::vector<FirmStat> firms;
    std::vector<PairStat> pairs;
    std::uint64_t races{0};
    std::uint64_t multi_participant_races{0};
    double tolerance{0.02};
};

// Expected one-way latency per firm, used to order each pair as
// (slower, faster). Firms missing from the map are ordered by their
// empirical mean arrival offset instead.
FairnessReport build_fairness_report(std::span<const sim::RaceRecord> races,
                                     const std::map<FirmId, Nanos>& expected_latency,
                                     double tolerance);

std::map<FirmId, Nanos> expected_latencies(const sim::ScenarioConfig& cfg);

// Win count for one firm over the battery.
std::uint64_t wins_of(std::span<const sim::RaceRecord> races, FirmId firm);

}  // namespace fairmatch::harness
