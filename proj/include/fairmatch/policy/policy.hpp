#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairmatch/order.hpp"

namespace fairmatch::policy {

// Where the reordering component decided to release an order. Orders sharing
// a release instant are forwarded in ascending (release_rank, arrived_at, seq);
// rank 0 means plain arrival-order tie-breaking.
struct PolicyDecision {
    Timestamp release_at{};
    std::uint64_t release_rank{0};
};

// Best bid/offer of the order's instrument as of the arrival instant.
struct BookView {
    std::optional<Price> best_bid{};
    std::optional<Price> best_offer{};
};

// A buy priced at or above the best offer, or a sell at or below the best
// bid; Market orders are marketable whenever the opposite side is nonempty.
bool is_marketable(const Order& o, const BookView& view);

// Buffer address: price absent = the marketable buffer M[instrument][side],
// price present = the price-level buffer B[instrument][side][price].
struct BufferKey {
    InstrumentId instrument{0};
    Side side{Side::Buy};
    std::optional<Price> price{};
    auto operator<=>(const BufferKey&) const = default;
};

struct ArrivalContext {
    BookView book{};
    // Side of the resting order a Cancel targets, when the venue knows it.
    std::optional<Side> cancel_target_side{};
};

// Outcome of intercepting one arrival.
struct ArrivalAction {
    enum class Kind : std::uint8_t { Schedule, Buffer, Drop };
    Kind kind{Kind::Schedule};
    PolicyDecision decision{};                 // Schedule
    BufferKey buffer{};                        // Buffer
    std::optional<Timestamp> timer_deadline{}; // Buffer: set iff this arrival started the timer
    const char* drop_reason{""};               // Drop
};

// Ordered batch released when a buffer's timer fires.
struct DrainResult {
    BufferKey key{};
    Timestamp deadline{};
    std::vector<FirmId> firm_permutation;
    std::vector<Order> releases;
};

// A reordering policy sits between the gateways and the matching engine and
// decides when each intercepted order is forwarded. Policies are deterministic
// state machines driven by a single-threaded event loop; the only state they
// hold is pending buffers and a seeded RNG.
class ReorderPolicy {
public:
    virtual ~ReorderPolicy() = default;
    virtual std::string_view name() const = 0;
    virtual ArrivalAction on_arrival(const Order& o, const ArrivalContext& ctx) = 0;
    // Only buffering policies schedule timers.
    virtual DrainResult on_timer(const BufferKey& key, Timestamp now);
};

}  // namespace fairmatch::policy
