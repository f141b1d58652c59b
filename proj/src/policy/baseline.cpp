#include "fairmatch/policy/baseline.hpp"

namespace fairmatch::policy {

DrainResult ReorderPolicy::on_timer(const BufferKey&, Timestamp) { return {}; }

bool is_marketable(const Order& o, const BookView& view) {
    switch (o.order_type) {
        case OrderType::Cancel:
            return false;
        case OrderType::Market:
            return o.side == Side::Buy ? view.best_offer.has_value() : view.best_bid.has_value();
        case OrderType::Limit:
        case OrderType::Ioc:
            if (o.side == Side::Buy)
                return view.best_offer && *o.limit_price >= *view.best_offer;
            return view.best_bid && *o.limit_price <= *view.best_bid;
    }
    return false;
}

PolicyDecision fcfs_schedule(const Order& o) { return PolicyDecision{o.arrived_at, 0}; }

PolicyDecision constant_delay_schedule(const Order& o, const ConstantDelayConfig& cfg,
                                       bool marketable) {
    if (cfg.takers_only && !marketable) return PolicyDecision{o.arrived_at, 0};
    return PolicyDecision{o.arrived_at + cfg.delay_ns, 0};
}

PolicyDecision random_delay_schedule(const Order& o, Nanos max_delay_ns, Rng& rng) {
    const Nanos delay = max_delay_ns > 0 ? rng.uniform_nanos(0, max_delay_ns) : 0;
    return PolicyDecision{o.arrived_at + delay, 0};
}

Timestamp fba_batch_end(Timestamp at, const FbaConfig& cfg) {
    const Nanos length = cfg.batch_length_ns;
    Nanos offset = at.ns - cfg.boundary_phase_ns;
    // Floor division so grids with a phase after the epoch still work.
    Nanos k = offset / length;
    if (offset < 0 && offset % length != 0) --k;
    return Timestamp{cfg.boundary_phase_ns + (k + 1) * length};
}

PolicyDecision fba_schedule(const Order& o, const FbaConfig& cfg, Rng& rng) {
    return PolicyDecision{fba_batch_end(o.arrived_at, cfg), rng.next_u64()};
}

}  // namespace fairmatch::policy
