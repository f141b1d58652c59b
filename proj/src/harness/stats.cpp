#include "fairmatch/harness/stats.hpp"

#include <algorithm>
#include <cmath>

namespace fairmatch::harness {

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
    if (n == 0) return {0.0, 1.0};
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / static_cast<double>(n);
    const double centre = p + z2 / (2.0 * static_cast<double>(n));
    const double margin =
        z * std::sqrt(p * (1.0 - p) / static_cast<double>(n) +
                      z2 / (4.0 * static_cast<double>(n) * static_cast<double>(n)));
    return {std::max(0.0, (centre - margin) / denom), std::min(1.0, (centre + margin) / denom)};
}

std::map<FirmId, Nanos> expected_latencies(const sim::ScenarioConfig& cfg) {
    std::map<FirmId, Nanos> out;
    for (const auto& [firm, profile] : cfg.latency_profiles) out[firm] = profile.base_total();
    return out;
}

std::uint64_t wins_of(std::span<const sim::RaceRecord> races, FirmId firm) {
    std::uint64_t wins = 0;
    for (const auto& r : races) wins += r.winner && *r.winner == firm;
    return wins;
}

FairnessReport build_fairness_report(std::span<const sim::RaceRecord> races,
                                     const std::map<FirmId, Nanos>& expected_latency,
                                     double tolerance) {
    FairnessReport report;
    report.tolerance = tolerance;
    report.races = races.size();

    struct Tally {
        std::uint64_t races{0};
        std::uint64_t wins{0};
        double arrival_offset_sum{0.0};
    };
    std::map<FirmId, Tally> firms;
    struct PairTally {
        std::uint64_t both{0};
        std::uint64_t a_wins{0};
        std::uint64_t b_wins{0};
    };
    std::map<std::pair<FirmId, FirmId>, PairTally> pairs;  // key: a < b by id

    for (const auto& race : races) {
        report.multi_participant_races += race.multi_participant;
        for (const auto& c : race.competitors) {
            Tally& t = firms[c.firm];
            t.races++;
            t.wins += race.winner && *race.winner == c.firm;
            t.arrival_offset_sum += static_cast<double>(c.arrived_at - race.stimulus_at);
        }
        for (std::size_t i = 0; i < race.competitors.size(); ++i) {
            for (std::size_t j = i + 1; j < race.competitors.size(); ++j) {
                FirmId a = race.competitors[i].firm;
                FirmId b = race.competitors[j].firm;
                if (a == b) continue;
                if (a > b) std::swap(a, b);
                PairTally& pt = pairs[{a, b}];
                pt.both++;
                if (race.winner && *race.winner == a) pt.a_wins++;
                if (race.winner && *race.winner == b) pt.b_wins++;
            }
        }
    }

    auto latency_of = [&](FirmId firm) -> double {
        auto it = expected_latency.find(firm);
        if (it != expected_latency.end()) return static_cast<double>(it->second);
        const Tally& t = firms.at(firm);
        return t.races > 0 ? t.arrival_offset_sum / static_cast<double>(t.races) : 0.0;
    };

    for (const auto& [firm, tally] : firms) {
        FirmStat fs;
        fs.firm = firm;
        fs.expected_latency_ns = static_cast<Nanos>(latency_of(firm));
        fs.races = tally.races;
        fs.wins = tally.wins;
        fs.win_rate = tally.races ? static_cast<double>(tally.wins) / tally.races : 0.0;
        report.firms.push_back(fs);
    }

    for (const auto& [key, tally] : pairs) {
        const auto [a, b] = key;
        PairStat ps;
        ps.tolerance = tolerance;
        const bool a_slower = latency_of(a) > latency_of(b);
        ps.slower = a_slower ? a : b;
        ps.faster = a_slower ? b : a;
        ps.races = tally.both;
        ps.slower_wins = a_slower ? tally.a_wins : tally.b_wins;
        ps.frequency = tally.both ? static_cast<double>(ps.slower_wins) / tally.both : 0.0;
        std::tie(ps.ci_lo, ps.ci_hi) = wilson_interval(ps.slower_wins, ps.races);
        ps.pass = ps.frequency <= ps.bound + tolerance;
        report.pairs.push_back(ps);
    }
    return report;
}

}  // namespace fairmatch::harness
