#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fairmatch/policy/libra.hpp"
#include "support/drain_enum.hpp"

using namespace fairmatch;
using namespace fairmatch::policy;

namespace {

Order buffered_order(AccountId account, FirmId firm, Nanos arrived, OrderSeq seq) {
    Order o;
    o.seq = seq;
    o.owner = ParticipantId{account, firm};
    o.instrument = 1;
    o.order_type = OrderType::Limit;
    o.side = Side::Buy;
    o.limit_price = Price{100};
    o.quantity = 1;
    o.submitted_at = Timestamp{arrived};
    o.arrived_at = Timestamp{arrived};
    return o;
}

Order incoming(OrderType type, Side side, std::optional<std::int64_t> price, Nanos at,
               OrderSeq seq, std::optional<OrderSeq> target = std::nullopt) {
    Order o;
    o.seq = seq;
    o.owner = ParticipantId{1, 1};
    o.instrument = 1;
    o.order_type = type;
    o.side = side;
    if (price) o.limit_price = Price{*price};
    o.quantity = type == OrderType::Cancel ? 0 : 1;
    o.target = target;
    o.submitted_at = Timestamp{at};
    o.arrived_at = Timestamp{at};
    return o;
}

LibraConfig config_with_timer(Nanos timer) {
    LibraConfig cfg;
    cfg.timer_ns = timer;
    cfg.rng_seed = 5;
    return cfg;
}

const ArrivalContext kQuotedBook{BookView{Price{98}, Price{100}}, std::nullopt};

}  // namespace

TEST_CASE("a cancel is forwarded at its arrival instant") {
    LibraPolicy libra(config_with_timer(3'000'000));
    const auto action = libra.on_arrival(
        incoming(OrderType::Cancel, Side::Sell, std::nullopt, 10, 1, OrderSeq{7}),
        kQuotedBook);
    REQUIRE(action.kind == ArrivalAction::Kind::Schedule);
    CHECK(action.decision.release_at == Timestamp{10});
}

TEST_CASE("a marketable buy joins the marketable buffer and starts the timer") {
    LibraPolicy libra(config_with_timer(3'000'000));
    const auto action =
        libra.on_arrival(incoming(OrderType::Limit, Side::Buy, 101, 0, 1), kQuotedBook);
    REQUIRE(action.kind == ArrivalAction::Kind::Buffer);
    CHECK(action.buffer == BufferKey{1, Side::Buy, std::nullopt});
    REQUIRE(action.timer_deadline.has_value());
    CHECK(*action.timer_deadline == Timestamp{3'000'000});
}

TEST_CASE("a non-marketable ioc is dropped") {
    LibraPolicy libra(config_with_timer(3'000'000));
    const auto action =
        libra.on_arrival(incoming(OrderType::Ioc, Side::Buy, 99, 0, 1), kQuotedBook);
    CHECK(action.kind == ArrivalAction::Kind::Drop);
}

TEST_CASE("a marketable ioc batches like any marketable order by default") {
    LibraPolicy libra(config_with_timer(3'000'000));
    const auto action =
        libra.on_arrival(incoming(OrderType::Ioc, Side::Buy, 100, 0, 1), kQuotedBook);
    REQUIRE(action.kind == ArrivalAction::Kind::Buffer);
    CHECK(action.timer_deadline.has_value());
}

TEST_CASE("ioc_never_starts_timer forwards marketable iocs untouched") {
    auto cfg = config_with_timer(3'000'000);
    cfg.ioc_never_starts_timer = true;
    LibraPolicy libra(cfg);
    const auto ioc =
        libra.on_arrival(incoming(OrderType::Ioc, Side::Buy, 100, 5, 1), kQuotedBook);
    REQUIRE(ioc.kind == ArrivalAction::Kind::Schedule);
    CHECK(ioc.decision.release_at == Timestamp{5});
    // non-marketable iocs are still dropped
    const auto dead =
        libra.on_arrival(incoming(OrderType::Ioc, Side::Buy, 99, 5, 2), kQuotedBook);
    CHECK(dead.kind == ArrivalAction::Kind::Drop);
}

TEST_CASE("two quotes at one level share a buffer and a single timer") {
    LibraPolicy libra(config_with_timer(3'000'000));
    const auto first =
        libra.on_arrival(incoming(OrderType::Limit, Side::Buy, 99, 0, 1), kQuotedBook);
    REQUIRE(first.kind == ArrivalAction::Kind::Buffer);
    CHECK(first.buffer == BufferKey{1, Side::Buy, Price{99}});
    REQUIRE(first.timer_deadline.has_value());
    CHECK(*first.timer_deadline == Timestamp{3'000'000});

    const auto second =
        libra.on_arrival(incoming(OrderType::Limit, Side::Buy, 99, 1'000'000, 2), kQuotedBook);
    REQUIRE(second.kind == ArrivalAction::Kind::Buffer);
    CHECK(second.buffer == first.buffer);
    CHECK(!second.timer_deadline.has_value());  // timer never restarted
    CHECK(libra.open_buffers() == 1);
}

TEST_CASE("a market order against an empty opposite side is dropped") {
    LibraPolicy libra(config_with_timer(3'000'000));
    const ArrivalContext empty_book{};
    const auto action = libra.on_arrival(
        incoming(OrderType::Market, Side::Buy, std::nullopt, 0, 1), empty_book);
    CHECK(action.kind == ArrivalAction::Kind::Drop);
}

TEST_CASE("with the exemption off a cancel races the snipers' buffer") {
    auto cfg = config_with_timer(3'000'000);
    cfg.cancel_exemption = false;
    LibraPolicy libra(cfg);
    ArrivalContext ctx = kQuotedBook;
    ctx.cancel_target_side = Side::Sell;  // protecting a resting offer
    const auto action = libra.on_arrival(
        incoming(OrderType::Cancel, Side::Sell, std::nullopt, 10, 1, OrderSeq{7}), ctx);
    REQUIRE(action.kind == ArrivalAction::Kind::Buffer);
    CHECK(action.buffer == BufferKey{1, Side::Buy, std::nullopt});
}

TEST_CASE("buffer drains on the deadline and is destroyed afterwards") {
    LibraPolicy libra(config_with_timer(3'000'000));
    libra.on_arrival(incoming(OrderType::Limit, Side::Buy, 99, 0, 1), kQuotedBook);
    const auto result = libra.on_timer(BufferKey{1, Side::Buy, Price{99}}, Timestamp{3'000'000});
    CHECK(result.releases.size() == 1);
    CHECK(libra.open_buffers() == 0);
    // a fresh arrival at the same key starts a fresh timer
    const auto again =
        libra.on_arrival(incoming(OrderType::Limit, Side::Buy, 99, 5'000'000, 2), kQuotedBook);
    REQUIRE(again.timer_deadline.has_value());
    CHECK(*again.timer_deadline == Timestamp{8'000'000});
}

TEST_CASE("two-firm drains are a fair coin over 100k seeded drains") {
    Rng rng(101);
    int a_first = 0;
    constexpr int n = 100'000;
    for (int i = 0; i < n; ++i) {
        std::vector<Order> buf{buffered_order(1, 1, 0, 1), buffered_order(2, 2, 1, 2)};
        const auto out = libra_drain_order(std::move(buf), {}, rng);
        a_first += out.front().owner.firm == 1;
    }
    const double freq = static_cast<double>(a_first) / n;
    CHECK(std::abs(freq - 0.5) < 0.02);
}

TEST_CASE("three-order drain admits exactly the two round-robin outputs") {
    const std::vector<Order> buf{buffered_order(1, 1, 0, 1), buffered_order(1, 1, 2'000, 2),
                                 buffered_order(2, 2, 1'000, 3)};
    const auto outputs = test::enumerate_drain_outputs(buf);
    // A1,B1,A2 for permutation (A,B); B1,A1,A2 for (B,A)
    CHECK(outputs == std::set<std::vector<OrderSeq>>{{1, 3, 2}, {3, 1, 2}});

    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        auto copy = buf;
        const auto out = libra_drain_order(std::move(copy), {}, rng);
        std::vector<OrderSeq> seqs;
        for (const auto& o : out) seqs.push_back(o.seq);
        CHECK(outputs.count(seqs) == 1);
    }
}

TEST_CASE("a single participant's buffer drains in exact arrival order") {
    Rng rng(3);
    std::vector<Order> buf{buffered_order(1, 1, 30, 3), buffered_order(1, 1, 10, 1),
                           buffered_order(1, 1, 20, 2)};
    const auto out = libra_drain_order(std::move(buf), {}, rng);
    REQUIRE(out.size() == 3);
    CHECK(out[0].seq == 1);
    CHECK(out[1].seq == 2);
    CHECK(out[2].seq == 3);
}

TEST_CASE("per-firm fifo and multiset preservation hold on random buffers") {
    Rng gen(55);
    Rng drain_rng(56);
    for (int round = 0; round < 300; ++round) {
        const int firms = 1 + static_cast<int>(gen.uniform_u64(6));
        std::vector<Order> buf;
        OrderSeq seq = 0;
        for (int f = 1; f <= firms; ++f) {
            const int orders = 1 + static_cast<int>(gen.uniform_u64(4));
            for (int k = 0; k < orders; ++k)
                buf.push_back(buffered_order(f, f, gen.uniform_nanos(0, 50), ++seq));
        }
        std::multiset<OrderSeq> input;
        for (const auto& o : buf) input.insert(o.seq);

        auto copy = buf;
        const auto out = libra_drain_order(std::move(copy), {}, drain_rng);

        std::multiset<OrderSeq> output;
        std::map<FirmId, std::pair<Timestamp, OrderSeq>> last_seen;
        for (const auto& o : out) {
            output.insert(o.seq);
            auto it = last_seen.find(o.owner.firm);
            if (it != last_seen.end())
                CHECK(it->second < std::make_pair(o.arrived_at, o.seq));
            last_seen[o.owner.firm] = {o.arrived_at, o.seq};
        }
        CHECK(input == output);
    }
}

TEST_CASE("duplicates do not change a firm's chance of the first slot") {
    Rng rng(77);
    constexpr int n = 100'000;
    int first_with_dups = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<Order> buf;
        for (OrderSeq k = 1; k <= 5; ++k) buf.push_back(buffered_order(1, 1, 0, k));
        buf.push_back(buffered_order(2, 2, 1, 6));
        const auto out = libra_drain_order(std::move(buf), {}, rng);
        first_with_dups += out.front().owner.firm == 1;
    }
    const double freq = static_cast<double>(first_with_dups) / n;
    CHECK(std::abs(freq - 0.5) < 0.02);  // same as with a single copy
}

TEST_CASE("sybil accounts merged into one firm drain as one group") {
    Rng rng(88);
    constexpr int n = 100'000;
    const std::map<AccountId, FirmId> merge{{10, 1}, {11, 1}};
    int merged_first = 0;
    int unmerged_first = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<Order> buf{buffered_order(10, 10, 0, 1), buffered_order(11, 11, 1, 2),
                               buffered_order(20, 20, 2, 3)};
        auto copy = buf;
        const auto merged = libra_drain_order(std::move(copy), merge, rng);
        merged_first += merged.front().owner.firm != 20;
        const auto split = libra_drain_order(std::move(buf), {}, rng);
        unmerged_first += split.front().owner.firm != 20;
    }
    CHECK(std::abs(static_cast<double>(merged_first) / n - 0.5) < 0.02);
    CHECK(std::abs(static_cast<double>(unmerged_first) / n - 2.0 / 3.0) < 0.02);
}

TEST_CASE("an early placeholder pins the attacker's real order behind the honest one") {
    // attacker: placeholder at t=0 plus a real order at t=2.9ms; honest: t=2.5ms
    const std::vector<Order> buf{buffered_order(7, 7, 0, 1),
                                 buffered_order(7, 7, 2'900'000, 3),
                                 buffered_order(3, 3, 2'500'000, 2)};
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(seed);
        auto copy = buf;
        const auto out = libra_drain_order(std::move(copy), {}, rng);
        CHECK(placeholding_resistance_check(out, 7, 3));
    }
}

TEST_CASE("without a placeholder the two firms split the first slot evenly") {
    Rng rng(13);
    constexpr int n = 100'000;
    int honest_before_attacker = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<Order> buf{buffered_order(7, 7, 2'900'000, 2),
                               buffered_order(3, 3, 2'500'000, 1)};
        const auto out = libra_drain_order(std::move(buf), {}, rng);
        honest_before_attacker += out.front().owner.firm == 3;
    }
    CHECK(std::abs(static_cast<double>(honest_before_attacker) / n - 0.5) < 0.02);
}

TEST_CASE("a placeholder at another price level cannot start the contested buffer") {
    LibraPolicy libra(config_with_timer(3'000'000));
    // placeholder parks far from the market, in its own price-level buffer
    const auto park =
        libra.on_arrival(incoming(OrderType::Limit, Side::Buy, 50, 0, 1), kQuotedBook);
    REQUIRE(park.kind == ArrivalAction::Kind::Buffer);
    CHECK(park.buffer == BufferKey{1, Side::Buy, Price{50}});
    CHECK(park.timer_deadline.has_value());

    // the contested marketable buffer still starts its own timer at the
    // first real arrival
    const auto real =
        libra.on_arrival(incoming(OrderType::Limit, Side::Buy, 101, 2'500'000, 2), kQuotedBook);
    REQUIRE(real.kind == ArrivalAction::Kind::Buffer);
    CHECK(real.buffer == BufferKey{1, Side::Buy, std::nullopt});
    REQUIRE(real.timer_deadline.has_value());
    CHECK(*real.timer_deadline == Timestamp{5'500'000});
    CHECK(libra.open_buffers() == 2);
}
