#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairmatch/sim/latency.hpp"
#include "fairmatch/types.hpp"

namespace fairmatch::sim {

enum class Strategy : std::uint8_t {
    PassiveMaker,   // posts the resting quote each race; may cancel it on the stimulus
    ReactiveTaker,  // responds to the stimulus with a marketable order
    Sniper,         // a taker aimed at stale quotes (identical mechanics, labelled)
    Placeholder,    // pre-seeds a buffer before the stimulus, then sends a real order
    Duplicator,     // sends k identical copies of its response
    BangTheClose,   // times its response to land just before a batch boundary
};

const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_string(std::string_view s);

struct AgentSpec {
    AccountId account{0};
    FirmId firm{0};
    Strategy strategy{Strategy::ReactiveTaker};
    Quantity quantity{1};
    OrderType order_type{OrderType::Ioc};    // response order type for taker roles
    std::int64_t aggression_ticks{0};        // added above the quote price
    int duplicates{1};                       // Duplicator: copies per response
    Nanos placeholder_lead_ns{0};            // Placeholder: sent this long before the stimulus
    std::int64_t placeholder_offset_ticks{0};  // 0 = placeholder at the contested level
    Quantity placeholder_quantity{0};          // 0 = scenario minimum quantity
    bool cancels_stale_quote{false};         // PassiveMaker: cancel the quote on the stimulus
    Nanos bang_margin_ns{0};                 // BangTheClose: arrive this early in the batch
};

struct PolicyConfig {
    std::string kind{"fcfs"};  // fcfs | constant_delay | random_delay | fba | libra
    // constant_delay
    Nanos delay_ns{3'000'000};
    bool takers_only{false};
    // random_delay
    Nanos max_delay_ns{2'000'000};
    // fba
    Nanos batch_length_ns{2'000'000};
    Nanos boundary_phase_ns{0};
    // libra
    Nanos timer_ns{1'000'000};
    bool cancel_exemption{true};
    bool ioc_never_starts_timer{false};
    std::map<AccountId, FirmId> firm_merge;
    // Seed for the policy's own stream; derived from the scenario seed when absent.
    std::optional<std::uint64_t> rng_seed{};
};

struct OutputPaths {
    std::string event_log;  // JSON-lines
    std::string races_csv;
    std::string summary;    // basename; .txt and .json are written
};

struct ScenarioConfig {
    std::string name{"scenario"};
    PolicyConfig policy{};
    // Explicit instrument rotation; empty means one fresh instrument per race
    // so races never interact through the book.
    std::vector<InstrumentId> instruments;
    std::vector<AgentSpec> agents;
    std::map<FirmId, LatencyProfile> latency_profiles;
    std::uint64_t races{1};
    Nanos horizon_ns{0};  // 0 = races * 1ms
    std::uint64_t seed{1};
    // Venue-side update preparation time, identical for every participant.
    // It shifts all responses equally, so intra-venue fairness is unaffected.
    Nanos update_delta_ns{0};
    Quantity min_quantity{1};
    Quantity contested_quantity{1};
    Price quote_price{100};
    Nanos maker_lead_ns{50'000'000};
    int replicas{1};
    double tolerance{0.02};
    OutputPaths outputs{};
};

// Human-readable validation problems; empty means the config is runnable.
std::vector<std::string> validate_scenario(const ScenarioConfig& cfg);

}  // namespace fairmatch::sim
