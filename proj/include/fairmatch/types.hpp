#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace fairmatch {

// Durations and offsets in integer nanoseconds. All simulation time is
// integral so comparisons are exact and ties are well defined.
using Nanos = std::int64_t;

struct Timestamp {
    Nanos ns{0};
    constexpr auto operator<=>(const Timestamp&) const = default;
};

constexpr Timestamp operator+(Timestamp t, Nanos d) { return Timestamp{t.ns + d}; }
constexpr Timestamp operator-(Timestamp t, Nanos d) { return Timestamp{t.ns - d}; }
constexpr Nanos operator-(Timestamp a, Timestamp b) { return a.ns - b.ns; }

// Prices are signed integer multiples of the minimum increment.
struct Price {
    std::int64_t ticks{0};
    constexpr auto operator<=>(const Price&) const = default;
};

constexpr Price operator+(Price p, std::int64_t t) { return Price{p.ticks + t}; }
constexpr Price operator-(Price p, std::int64_t t) { return Price{p.ticks - t}; }

using Quantity = std::int64_t;
using InstrumentId = std::int64_t;
using AccountId = std::int32_t;
using FirmId = std::int32_t;
using OrderSeq = std::uint64_t;

// One logical trading account. `firm` ties accounts that share an owner,
// so that grouping operations can treat them as a single participant.
struct ParticipantId {
    AccountId id{0};
    FirmId firm{0};
    constexpr auto operator<=>(const ParticipantId&) const = default;
};

enum class Side : std::uint8_t { Buy, Sell };
enum class OrderType : std::uint8_t { Market, Limit, Cancel, Ioc };

constexpr Side opposite(Side s) { return s == Side::Buy ? Side::Sell : Side::Buy; }

const char* to_string(Side s);
const char* to_string(OrderType t);
std::optional<Side> side_from_string(std::string_view s);
std::optional<OrderType> order_type_from_string(std::string_view s);

}  // namespace fairmatch
