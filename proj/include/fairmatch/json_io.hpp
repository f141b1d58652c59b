#pragma once

#include <json.hpp>

#include "fairmatch/order.hpp"

// JSON-lines wire format for orders and execution reports. Timestamps are
// integer nanoseconds; prices are integer ticks. Field names are stable and
// round-trip bit-exactly.
namespace fairmatch {

inline nlohmann::json to_json(const Order& o) {
    nlohmann::json j{
        {"seq", o.seq},
        {"owner", {{"id", o.owner.id}, {"firm", o.owner.firm}}},
        {"instrument", o.instrument},
        {"order_type", to_string(o.order_type)},
        {"side", to_string(o.side)},
        {"quantity", o.quantity},
        {"submitted_at", o.submitted_at.ns},
        {"arrived_at", o.arrived_at.ns},
    };
    j["limit_price"] = o.limit_price ? nlohmann::json(o.limit_price->ticks) : nlohmann::json();
    j["target"] = o.target ? nlohmann::json(*o.target) : nlohmann::json();
    j["forwarded_at"] = o.forwarded_at ? nlohmann::json(o.forwarded_at->ns) : nlohmann::json();
    return j;
}

inline Order order_from_json(const nlohmann::json& j) {
    Order o;
    o.seq = j.at("seq").get<OrderSeq>();
    o.owner.id = j.at("owner").at("id").get<AccountId>();
    o.owner.firm = j.at("owner").at("firm").get<FirmId>();
    o.instrument = j.at("instrument").get<InstrumentId>();
    o.order_type = order_type_from_string(j.at("order_type").get<std::string>()).value();
    o.side = side_from_string(j.at("side").get<std::string>()).value();
    if (!j.at("limit_price").is_null()) o.limit_price = Price{j.at("limit_price").get<std::int64_t>()};
    o.quantity = j.at("quantity").get<Quantity>();
    if (!j.at("target").is_null()) o.target = j.at("target").get<OrderSeq>();
    o.submitted_at = Timestamp{j.at("submitted_at").get<Nanos>()};
    o.arrived_at = Timestamp{j.at("arrived_at").get<Nanos>()};
    if (!j.at("forwarded_at").is_null()) o.forwarded_at = Timestamp{j.at("forwarded_at").get<Nanos>()};
    return o;
}

inline nlohmann::json to_json(const ExecutionReport& r) {
    return nlohmann::json{
        {"taker_order", r.taker_order}, {"maker_order", r.maker_order},
        {"price", r.price.ticks},       {"quantity", r.quantity},
        {"at", r.at.ns},
    };
}

inline ExecutionReport report_from_json(const nlohmann::json& j) {
    return ExecutionReport{
        j.at("taker_order").get<OrderSeq>(), j.at("maker_order").get<OrderSeq>(),
        Price{j.at("price").get<std::int64_t>()}, j.at("quantity").get<Quantity>(),
        Timestamp{j.at("at").get<Nanos>()},
    };
}

}  // namespace fairmatch
