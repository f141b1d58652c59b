#pragma once

#include <optional>

#include "fairmatch/types.hpp"

namespace fairmatch {

// One order message. `seq` is the exchange-assigned arrival sequence number,
// monotone in arrival order; it breaks ties between equal arrival timestamps.
struct Order {
    OrderSeq seq{0};
    ParticipantId owner{};
    InstrumentId instrument{0};
    OrderType order_type{OrderType::Limit};
    Side side{Side::Buy};
    std::optional<Price> limit_price{};
    Quantity quantity{0};
    std::optional<OrderSeq> target{};  // Cancel only: the order to remove
    Timestamp submitted_at{};
    Timestamp arrived_at{};
    std::optional<Timestamp> forwarded_at{};
};

struct ExecutionReport {
    OrderSeq taker_order{0};
    OrderSeq maker_order{0};
    Price price{};
    Quantity quantity{0};
    Timestamp at{};
    bool operator==(const ExecutionReport&) const = default;
};

enum class OrderReject : std::uint8_t {
    Ok = 0,
    ZeroQuantity,
    MissingPrice,
    UnexpectedPrice,
    MissingCancelTarget,
    UnexpectedQuantity,
    TimestampInversion,
};

const char* to_string(OrderReject r);

// Pure structural validation. Rejections are return values, never failures;
// the same order always yields the same verdict.
OrderReject validate_order(const Order& o);

}  // namespace fairmatch
