#pragma once

#include <map>
#include <span>
#include <vector>

#include "fairmatch/policy/policy.hpp"
#include "fairmatch/rng.hpp"

namespace fairmatch::policy {

struct LibraConfig {
    Nanos timer_ns{1'000'000};
    // Account -> owning firm, from the venue's customer-identity records.
    // Accounts not listed group under their declared firm.
    std::map<AccountId, FirmId> firm_merge;
    std::uint64_t rng_seed{0};
    // Zero-delay fast path for cancel messages. Optional; protects makers
    // from having stale quotes picked off while the cancel sits in a batch.
    bool cancel_exemption{true};
    // Alternate reading of IOC handling: marketable IOCs bypass buffering
    // entirely and never start a timer. Default follows the buffering
    // algorithm literally (marketable IOCs batch like any marketable order).
    bool ioc_never_starts_timer{false};
};

FirmId effective_firm(const ParticipantId& owner, const std::map<AccountId, FirmId>& merge);

// The draining order for one buffer: group by owning firm, sort each group by
// ascending (arrived_at, seq), draw one random permutation of the firms
// present, then round-robin over that fixed permutation popping each firm's
// oldest remaining order until every group is empty.
std::vector<Order> libra_drain_order(std::vector<Order> buffered,
                                     const std::map<AccountId, FirmId>& merge, Rng& rng,
                                     std::vector<FirmId>* permutation_out = nullptr);

// True iff the honest firm's first order precedes the attacker's second
// ("real") order in a drained batch. With a pre-event placeholder topping the
// attacker's arrival-sorted list this must hold for every permutation.
bool placeholding_resistance_check(std::span<const Order> drained, FirmId attacker,
                                   FirmId honest,
                                   const std::map<AccountId, FirmId>& merge = {});

// Order-triggered batching. Incoming orders are buffered per instrument and
// side — marketable orders together, everything else per price level — and a
// buffer's first insertion starts its drain timer. Cancels pass straight
// through when the exemption is on. Non-marketable IOCs are dropped.
class LibraPolicy final : public ReorderPolicy {
public:
    explicit LibraPolicy(LibraConfig cfg)
        : cfg_(std::move(cfg)), rng_(cfg_.rng_seed) {}

    std::string_view name() const override { return "libra"; }
    ArrivalAction on_arrival(const Order& o, const ArrivalContext& ctx) override;
    DrainResult on_timer(const BufferKey& key, Timestamp now) override;

    const LibraConfig& config() const { return cfg_; }
    std::size_t open_buffers() const { return buffers_.size(); }

private:
    struct Buffer {
        std::vector<Order> orders;
        Timestamp deadline{};
    };

    ArrivalAction buffer_into(const BufferKey& key, const Order& o);

    LibraConfig cfg_;
    Rng rng_;
    std::map<BufferKey, Buffer> buffers_;
};

}  // namespace fairmatch::policy
