#include "fairmatch/order.hpp"

namespace fairmatch {

const char* to_string(Side s) { return s == Side::Buy ? "buy" : "sell"; }

const char* to_string(OrderType t) {
    switch (t) {
        case OrderType::Market: return "market";
        case OrderType::Limit: return "limit";
        case OrderType::Cancel: return "cancel";
        case OrderType::Ioc: return "ioc";
    }
    return "?";
}

std::optional<Side> side_from_string(std::string_view s) {
    if (s == "buy") return Side::Buy;
    if (s == "sell") return Side::Sell;
    return std::nullopt;
}

std::optional<OrderType> order_type_from_string(std::string_view s) {
    if (s == "market") return OrderType::Market;
    if (s == "limit") return OrderType::Limit;
    if (s == "cancel") return OrderType::Cancel;
    if (s == "ioc") return OrderType::Ioc;
    return std::nullopt;
}

const char* to_string(OrderReject r) {
    switch (r) {
        case OrderReject::Ok: return "ok";
        case OrderReject::ZeroQuantity: return "zero quantity";
        case OrderReject::MissingPrice: return "missing price";
        case OrderReject::UnexpectedPrice: return "unexpected price";
        case OrderReject::MissingCancelTarget: return "missing cancel target";
        case OrderReject::UnexpectedQuantity: return "unexpected quantity";
        case OrderReject::TimestampInversion: return "timestamp inversion";
    }
    return "?";
}

OrderReject validate_order(const Order& o) {
    if (o.order_type == OrderType::Cancel) {
        if (!o.target) return OrderReject::MissingCancelTarget;
        if (o.quantity != 0) return OrderReject::UnexpectedQuantity;
        if (o.limit_price) return OrderReject::UnexpectedPrice;
    } else {
        if (o.quantity <= 0) return OrderReject::ZeroQuantity;
        const bool needs_price =
            o.order_type == OrderType::Limit || o.order_type == OrderType::Ioc;
        if (needs_price && !o.limit_price) return OrderReject::MissingPrice;
        if (o.order_type == OrderType::Market && o.limit_price) return OrderReject::UnexpectedPrice;
    }
    if (o.arrived_at < o.submitted_at) return OrderReject::TimestampInversion;
    if (o.forwarded_at && *o.forwarded_at < o.arrived_at) return OrderReject::TimestampInversion;
    return OrderReject::Ok;
}

}  // namespace fairmatch
