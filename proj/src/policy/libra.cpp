#include "fairmatch/policy/libra.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairmatch::policy {

FirmId effective_firm(const ParticipantId& owner, const std::map<AccountId, FirmId>& merge) {
    auto it = merge.find(owner.id);
    return it == merge.end() ? owner.firm : it->second;
}

std::vector<Order> libra_drain_order(std::vector<Order> buffered,
                                     const std::map<AccountId, FirmId>& merge, Rng& rng,
                                     std::vector<FirmId>* permutation_out) {
    // Per-firm lists, each sorted by ascending arrival; map keys give a
    // deterministic pre-shuffle enumeration of the firms present.
    std::map<FirmId, std::vector<Order>> per_firm;
    for (auto& o : buffered) per_firm[effective_firm(o.owner, merge)].push_back(std::move(o));
    for (auto& [firm, orders] : per_firm) {
        std::sort(orders.begin(), orders.end(), [](const Order& a, const Order& b) {
            return a.arrived_at != b.arrived_at ? a.arrived_at < b.arrived_at : a.seq < b.seq;
        });
    }

    std::vector<FirmId> shuffled;
    shuffled.reserve(per_firm.size());
    for (const auto& [firm, orders] : per_firm) shuffled.push_back(firm);
    rng.shuffle(shuffled);
    if (permutation_out) *permutation_out = shuffled;

    std::vector<Order> out;
    out.reserve(buffered.size());
    std::map<FirmId, std::size_t> next;
    std::size_t remaining = 0;
    for (const auto& [firm, orders] : per_firm) remaining += orders.size();
    while (remaining > 0) {
        for (FirmId firm : shuffled) {
            auto& orders = per_firm[firm];
            std::size_t& idx = next[firm];
            if (idx < orders.size()) {
                out.push_back(orders[idx++]);
                --remaining;
            }
        }
    }
    return out;
}

bool placeholding_resistance_check(std::span<const Order> drained, FirmId attacker,
                                   FirmId honest, const std::map<AccountId, FirmId>& merge) {
    std::optional<std::size_t> honest_first;
    std::size_t attacker_seen = 0;
    std::optional<std::size_t> attacker_second;
    for (std::size_t i = 0; i < drained.size(); ++i) {
        const FirmId firm = effective_firm(drained[i].owner, merge);
        if (firm == honest && !honest_first) honest_first = i;
        if (firm == attacker && ++attacker_seen == 2) attacker_second = i;
    }
    if (!honest_first || !attacker_second) return false;
    return *honest_first < *attacker_second;
}

ArrivalAction LibraPolicy::buffer_into(const BufferKey& key, const Order& o) {
    auto [it, inserted] = buffers_.try_emplace(key);
    Buffer& buf = it->second;
    buf.orders.push_back(o);
    ArrivalAction action{ArrivalAction::Kind::Buffer, {}, key, {}, ""};
    if (inserted) {
        // The first order starts the timer; later insertions never extend it.
        buf.deadline = o.arrived_at + cfg_.timer_ns;
        action.timer_deadline = buf.deadline;
    }
    return action;
}

ArrivalAction LibraPolicy::on_arrival(const Order& o, const ArrivalContext& ctx) {
    if (o.order_type == OrderType::Cancel) {
        if (cfg_.cancel_exemption || !ctx.cancel_target_side) {
            return ArrivalAction{ArrivalAction::Kind::Schedule,
                                 PolicyDecision{o.arrived_at, 0}, {}, {}, ""};
        }
        // Exemption off: the cancel races the marketable orders attacking the
        // quote it protects, in the same batch.
        return buffer_into(BufferKey{o.instrument, opposite(*ctx.cancel_target_side), {}}, o);
    }

    if (is_marketable(o, ctx.book)) {
        if (o.order_type == OrderType::Ioc && cfg_.ioc_never_starts_timer) {
            return ArrivalAction{ArrivalAction::Kind::Schedule,
                                 PolicyDecision{o.arrived_at, 0}, {}, {}, ""};
        }
        return buffer_into(BufferKey{o.instrument, o.side, {}}, o);
    }

    if (o.order_type == OrderType::Ioc)
        return ArrivalAction{ArrivalAction::Kind::Drop, {}, {}, {},
                             "non-marketable ioc"};
    if (o.order_type == OrderType::Market)
        return ArrivalAction{ArrivalAction::Kind::Drop, {}, {}, {},
                             "market order with empty opposite side"};

    return buffer_into(BufferKey{o.instrument, o.side, o.limit_price}, o);
}

DrainResult LibraPolicy::on_timer(const BufferKey& key, Timestamp now) {
    auto it = buffers_.find(key);
    if (it == buffers_.end()) throw std::logic_error("timer fired for unknown buffer");
    if (it->second.deadline != now) throw std::logic_error("timer fired off its deadline");
    DrainResult result;
    result.key = key;
    result.deadline = now;
    result.releases =
        libra_drain_order(std::move(it->second.orders), cfg_.firm_merge, rng_,
                          &result.firm_permutation);
    // Buffer destroyed; the next arrival at this key starts a fresh timer.
    buffers_.erase(it);
    return result;
}

}  // namespace fairmatch::policy
