#pragma once

#include <array>
#include <vector>

#include "fairmatch/rng.hpp"
#include "fairmatch/types.hpp"

namespace fairmatch::sim {

// Additive noise on one latency leg.
struct JitterSpec {
    enum class Kind : std::uint8_t { None, Uniform, TruncNormal };
    Kind kind{Kind::None};
    Nanos lo{0};
    Nanos hi{0};
    double mean{0.0};
    double stddev{0.0};

    Nanos draw(Rng& rng) const;
    bool active() const { return kind != Kind::None; }
    Nanos max_ns() const { return kind == Kind::None ? 0 : hi; }
};

// Step change in gateway latency from a point in time onward; models bursts
// of congestion without simulating queues.
struct GatewayStep {
    Timestamp at{};
    Nanos extra{0};
};

// Per-participant delay decomposition for one stimulus-response round trip:
// the venue's per-participant dissemination stagger, the network path of the
// update, the participant's reaction time, the order's transmission path, and
// the order gateway. Each leg takes optional additive jitter.
struct LatencyProfile {
    Nanos update_offset_ns{0};
    Nanos update_path_ns{0};
    Nanos reaction_ns{0};
    Nanos transmit_ns{0};
    Nanos gateway_ns{0};
    JitterSpec update_offset_jitter{};
    JitterSpec update_path_jitter{};
    JitterSpec reaction_jitter{};
    JitterSpec transmit_jitter{};
    JitterSpec gateway_jitter{};
    std::vector<GatewayStep> gateway_steps;  // sorted by `at`

    Nanos base_total() const {
        return update_offset_ns + update_path_ns + reaction_ns + transmit_ns + gateway_ns;
    }
    Nanos step_extra_at(Timestamp t) const;
};

// One composed response: every intermediate instant plus the logged jitter
// draws, so arrival times are auditable from the event log.
struct ArrivalPlan {
    Timestamp update_at{};     // stimulus + stagger + update path
    Timestamp submitted_at{};  // update_at + reaction
    Timestamp arrived_at{};    // submitted_at + transmit + gateway
    std::array<Nanos, 5> jitter{};  // one entry per leg, zero when leg has none
    Nanos gateway_step_extra{0};
};

ArrivalPlan plan_arrival(const LatencyProfile& profile, Timestamp stimulus, Rng& jitter_rng);

}  // namespace fairmatch::sim
