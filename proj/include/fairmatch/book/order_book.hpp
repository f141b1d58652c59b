#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "fairmatch/order.hpp"

namespace fairmatch::book {

// One price level: resting order references in forwarding order, front first.
struct BookLevel {
    Price price{};
    std::deque<OrderSeq> queue;
    Quantity total{0};
};

enum class CancelResult : std::uint8_t { Cancelled, TooLate };

// Per-instrument continuous limit order book with price-time priority.
// Single-threaded: one book is driven by exactly one event loop. Incoming
// orders match at the resting order's price, walking levels best-first and
// queues front-first. Limit remainders rest; Market and IOC remainders are
// discarded. The book never holds a crossed state at rest.
class LimitOrderBook {
public:
    explicit LimitOrderBook(InstrumentId instrument) : instrument_(instrument) {}

    InstrumentId instrument() const { return instrument_; }

    std::optional<Price> best_bid() const;
    std::optional<Price> best_offer() const;

    // Processes one forwarded non-Cancel order; o must be validated and carry
    // forwarded_at. Submitting to the wrong instrument is a contract violation.
    std::vector<ExecutionReport> submit(const Order& o);

    // Removes the target if it still rests; TooLate if filled or unknown.
    CancelResult cancel(const Order& c);

    Quantity open_quantity(OrderSeq seq) const;
    bool empty() const { return bids_.empty() && offers_.empty(); }

    // Levels with aggregate quantity, best first on each side.
    nlohmann::json snapshot() const;

private:
    struct Resting {
        Side side{};
        Price price{};
        Quantity remaining{0};
    };

    template <class Levels>
    std::vector<ExecutionReport> match_against(Order taker, Levels& levels, bool price_limited);
    void rest(const Order& o, Quantity remaining);

    InstrumentId instrument_;
    std::map<Price, BookLevel, std::greater<Price>> bids_;
    std::map<Price, BookLevel, std::less<Price>> offers_;
    std::unordered_map<OrderSeq, Resting> open_;
};

}  // namespace fairmatch::book
