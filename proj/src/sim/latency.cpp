#include "fairmatch/sim/latency.hpp"

#include <cmath>

namespace fairmatch::sim {

Nanos JitterSpec::draw(Rng& rng) const {
    switch (kind) {
        case Kind::None:
            return 0;
        case Kind::Uniform:
            return rng.uniform_nanos(lo, hi);
        case Kind::TruncNormal:
            return static_cast<Nanos>(std::llround(
                rng.truncated_normal(mean, stddev, static_cast<double>(lo),
                                     static_cast<double>(hi))));
    }
    return 0;
}

Nanos LatencyProfile::step_extra_at(Timestamp t) const {
    Nanos extra = 0;
    for (const auto& step : gateway_steps) {
        if (step.at <= t) extra = step.extra;
        else break;
    }
    return extra;
}

ArrivalPlan plan_arrival(const LatencyProfile& p, Timestamp stimulus, Rng& rng) {
    ArrivalPlan plan;
    plan.jitter[0] = p.update_offset_jitter.draw(rng);
    plan.jitter[1] = p.update_path_jitter.draw(rng);
    plan.jitter[2] = p.reaction_jitter.draw(rng);
    plan.jitter[3] = p.transmit_jitter.draw(rng);
    plan.jitter[4] = p.gateway_jitter.draw(rng);

    plan.update_at =
        stimulus + (p.update_offset_ns + plan.jitter[0] + p.update_path_ns + plan.jitter[1]);
    plan.submitted_at = plan.update_at + (p.reaction_ns + plan.jitter[2]);
    const Timestamp at_gateway = plan.submitted_at + (p.transmit_ns + plan.jitter[3]);
    plan.gateway_step_extra = p.step_extra_at(at_gateway);
    plan.arrived_at = at_gateway + (p.gateway_ns + plan.jitter[4] + plan.gateway_step_extra);
    return plan;
}

}  // namespace fairmatch::sim
