#include "fairmatch/book/order_book.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairmatch::book {

std::optional<Price> LimitOrderBook::best_bid() const {
    if (bids_.empty()) return std::nullopt;
    return bids_.begin()->first;
}

std::optional<Price> LimitOrderBook::best_offer() const {
    if (offers_.empty()) return std::nullopt;
    return offers_.begin()->first;
}

Quantity LimitOrderBook::open_quantity(OrderSeq seq) const {
    auto it = open_.find(seq);
    return it == open_.end() ? 0 : it->second.remaining;
}

template <class Levels>
std::vector<ExecutionReport> LimitOrderBook::match_against(Order taker, Levels& levels,
                                                           bool price_limited) {
    std::vector<ExecutionReport> reports;
    Quantity remaining = taker.quantity;
    while (remaining > 0 && !levels.empty()) {
        auto level_it = levels.begin();
        BookLevel& level = level_it->second;
        if (price_limited) {
            const bool compatible = taker.side == Side::Buy
                                        ? *taker.limit_price >= level.price
                                        : *taker.limit_price <= level.price;
            if (!compatible) break;
        }
        const OrderSeq maker = level.queue.front();
        Resting& resting = open_.at(maker);
        const Quantity fill = std::min(remaining, resting.remaining);
        reports.push_back(ExecutionReport{taker.seq, maker, level.price, fill,
                                          taker.forwarded_at.value_or(taker.arrived_at)});
        remaining -= fill;
        resting.remaining -= fill;
        level.total -= fill;
        if (resting.remaining == 0) {
            level.queue.pop_front();
            open_.erase(maker);
        }
        if (level.queue.empty()) levels.erase(level_it);
    }
    // Remainder handling: Limit rests, Market and IOC remainders are dropped.
    if (remaining > 0 && taker.order_type == OrderType::Limit) rest(taker, remaining);
    return reports;
}

void LimitOrderBook::rest(const Order& o, Quantity remaining) {
    open_[o.seq] = Resting{o.side, *o.limit_price, remaining};
    if (o.side == Side::Buy) {
        auto [it, inserted] = bids_.try_emplace(*o.limit_price);
        if (inserted) it->second.price = *o.limit_price;
        it->second.queue.push_back(o.seq);
        it->second.total += remaining;
    } else {
        auto [it, inserted] = offers_.try_emplace(*o.limit_price);
        if (inserted) it->second.price = *o.limit_price;
        it->second.queue.push_back(o.seq);
        it->second.total += remaining;
    }
}

std::vector<ExecutionReport> LimitOrderBook::submit(const Order& o) {
    if (o.instrument != instrument_)
        throw std::logic_error("order submitted to wrong instrument's book");
    if (o.order_type == OrderType::Cancel)
        throw std::logic_error("cancel passed to submit()");
    const bool price_limited = o.order_type != OrderType::Market;
    if (o.side == Side::Buy) return match_against(o, offers_, price_limited);
    return match_against(o, bids_, price_limited);
}

CancelResult LimitOrderBook::cancel(const Order& c) {
    if (!c.target) return CancelResult::TooLate;
    auto it = open_.find(*c.target);
    if (it == open_.end()) return CancelResult::TooLate;
    const Resting resting = it->second;
    auto scrub = [&](auto& levels) {
        auto level_it = levels.find(resting.price);
        BookLevel& level = level_it->second;
        level.queue.erase(std::find(level.queue.begin(), level.queue.end(), *c.target));
        level.total -= resting.remaining;
        if (level.queue.empty()) levels.erase(level_it);
    };
    if (resting.side == Side::Buy) scrub(bids_); else scrub(offers_);
    open_.erase(it);
    return CancelResult::Cancelled;
}

nlohmann::json LimitOrderBook::snapshot() const {
    auto side_json = [](const auto& levels) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [price, level] : levels)
            arr.push_back({{"price", price.ticks}, {"quantity", level.total}});
        return arr;
    };
    return nlohmann::json{{"instrument", instrument_},
                          {"bids", side_json(bids_)},
                          {"offers", side_json(offers_)}};
}

}  // namespace fairmatch::book
