#pragma once

#include "fairmatch/policy/policy.hpp"
#include "fairmatch/rng.hpp"

namespace fairmatch::policy {

struct ConstantDelayConfig {
    Nanos delay_ns{0};
    bool takers_only{false};  // when set, only marketable orders are delayed
};

struct RandomDelayConfig {
    Nanos max_delay_ns{0};
    std::uint64_t rng_seed{0};
};

struct FbaConfig {
    Nanos batch_length_ns{1};
    Nanos boundary_phase_ns{0};  // offset of the fixed batch grid
    std::uint64_t rng_seed{0};
};

// Release immediately; forwarding order is ascending (arrived_at, seq).
PolicyDecision fcfs_schedule(const Order& o);

// Release after a fixed delay; with takers_only set, non-marketable orders
// (including cancels) pass through untouched.
PolicyDecision constant_delay_schedule(const Order& o, const ConstantDelayConfig& cfg,
                                       bool marketable);

// Release after a uniform delay in [0, max_delay_ns], one draw per order,
// draws consumed in arrival order so runs replay exactly.
PolicyDecision random_delay_schedule(const Order& o, Nanos max_delay_ns, Rng& rng);

// End of the fixed grid interval containing `at`.
Timestamp fba_batch_end(Timestamp at, const FbaConfig& cfg);

// Release at the end of the interval containing the arrival. Every order gets
// an i.i.d. rank draw; sorting a batch by rank realizes a uniformly random
// within-batch permutation, and batch i finishes before batch i+1 starts.
PolicyDecision fba_schedule(const Order& o, const FbaConfig& cfg, Rng& rng);

class FcfsPolicy final : public ReorderPolicy {
public:
    std::string_view name() const override { return "fcfs"; }
    ArrivalAction on_arrival(const Order& o, const ArrivalContext&) override {
        return ArrivalAction{ArrivalAction::Kind::Schedule, fcfs_schedule(o), {}, {}, ""};
    }
};

class ConstantDelayPolicy final : public ReorderPolicy {
public:
    explicit ConstantDelayPolicy(ConstantDelayConfig cfg) : cfg_(cfg) {}
    std::string_view name() const override { return "constant_delay"; }
    ArrivalAction on_arrival(const Order& o, const ArrivalContext& ctx) override {
        const auto decision = constant_delay_schedule(o, cfg_, is_marketable(o, ctx.book));
        return ArrivalAction{ArrivalAction::Kind::Schedule, decision, {}, {}, ""};
    }

private:
    ConstantDelayConfig cfg_;
};

class RandomDelayPolicy final : public ReorderPolicy {
public:
    explicit RandomDelayPolicy(RandomDelayConfig cfg) : cfg_(cfg), rng_(cfg.rng_seed) {}
    std::string_view name() const override { return "random_delay"; }
    ArrivalAction on_arrival(const Order& o, const ArrivalContext&) override {
        return ArrivalAction{ArrivalAction::Kind::Schedule,
                             random_delay_schedule(o, cfg_.max_delay_ns, rng_), {}, {}, ""};
    }

private:
    RandomDelayConfig cfg_;
    Rng rng_;
};

class FbaPolicy final : public ReorderPolicy {
public:
    explicit FbaPolicy(FbaConfig cfg) : cfg_(cfg), rng_(cfg.rng_seed) {}
    std::string_view name() const override { return "fba"; }
    ArrivalAction on_arrival(const Order& o, const ArrivalContext&) override {
        return ArrivalAction{ArrivalAction::Kind::Schedule, fba_schedule(o, cfg_, rng_), {}, {}, ""};
    }
    const FbaConfig& config() const { return cfg_; }

private:
    FbaConfig cfg_;
    Rng rng_;
};

}  // namespace fairmatch::policy
