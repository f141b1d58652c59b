#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "fairmatch/order.hpp"
#include "fairmatch/policy/policy.hpp"
#include "fairmatch/sim/scenario.hpp"

namespace fairmatch::sim {

enum class Role : std::uint8_t { MakerQuote, Taker, Placeholder, CancelMsg };

const char* to_string(Role r);

// One message planned for a race, before the exchange assigns its seq.
struct PlannedOrder {
    Order order{};
    Role role{Role::Taker};
    ArrivalPlan plan{};
    bool cancel_targets_quote{false};
    bool schedule_update{false};  // stimulus responses get a market-data delivery
};

struct RaceCompetitor {
    FirmId firm{0};
    AccountId account{0};
    Timestamp arrived_at{};
};

// One contested trading opportunity and its outcome.
struct RaceRecord {
    std::uint64_t race_id{0};
    Timestamp stimulus_at{};
    InstrumentId instrument{0};
    Side side{Side::Buy};
    Price price{};
    Quantity quantity{0};
    std::vector<RaceCompetitor> competitors;
    std::optional<FirmId> winner{};
    bool multi_participant{false};
};

struct SimCounts {
    std::uint64_t orders{0};
    std::uint64_t drops{0};
    std::uint64_t cancels{0};
    std::uint64_t fills{0};
    std::uint64_t drains{0};
    std::uint64_t cancel_overtakes{0};
    std::uint64_t matches_prevented{0};
    std::uint64_t contested_timer_started_by_placeholder{0};
    std::uint64_t placeholding_checks{0};
    std::uint64_t placeholding_passed{0};
};

struct SimResult {
    std::string policy_name;
    std::vector<RaceRecord> races;
    SimCounts counts{};
};

// True when the scenario's races contest queue position at a price level
// (placeholding setups) rather than a resting quote.
bool is_quote_race(const ScenarioConfig& cfg);

// Plans one race's messages: the maker quote resting `maker_lead_ns` before
// the stimulus, each racing agent's response composed through its firm's
// latency profile, and any stimulus-triggered cancel. Jitter draws are
// consumed in agent declaration order.
std::vector<PlannedOrder> make_race(const ScenarioConfig& cfg, InstrumentId instrument,
                                    Timestamp stimulus, Rng& jitter_rng);

// Runs the scenario's race battery on a single-threaded event loop.
// Deterministic per (cfg, seed); the optional stream receives the JSON-lines
// event log. Throws std::invalid_argument on a config that fails validation.
SimResult run_scenario(const ScenarioConfig& cfg, std::ostream* event_log = nullptr);

struct SnipingCounts {
    std::uint64_t races{0};
    std::uint64_t cancel_overtakes{0};
    std::uint64_t matches_prevented{0};
};

// Race battery where a slow maker re-prices after the stimulus while a fast
// taker goes for the stale quote; counts how often the cancel outran an
// earlier-arrived taker order and how many matches that prevented.
SnipingCounts sniping_scenario(const ScenarioConfig& cfg, std::ostream* event_log = nullptr);

}  // namespace fairmatch::sim
