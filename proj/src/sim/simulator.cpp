#include "fairmatch/sim/simulator.hpp"

#include <cassert>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <variant>

#include <json.hpp>

#include "fairmatch/book/order_book.hpp"
#include "fairmatch/json_io.hpp"
#include "fairmatch/policy/baseline.hpp"
#include "fairmatch/policy/libra.hpp"

namespace fairmatch::sim {

namespace {

constexpr std::uint64_t kNoPos = std::numeric_limits<std::uint64_t>::max();

nlohmann::json key_json(const policy::BufferKey& key) {
    nlohmann::json j{{"instrument", key.instrument}, {"side", to_string(key.side)}};
    j["price"] = key.price ? nlohmann::json(key.price->ticks) : nlohmann::json();
    return j;
}

std::unique_ptr<policy::ReorderPolicy> make_policy(const PolicyConfig& cfg,
                                                   std::uint64_t scenario_seed) {
    const std::uint64_t policy_seed =
        cfg.rng_seed ? *cfg.rng_seed : Rng::derive(scenario_seed, 3);
    if (cfg.kind == "fcfs") return std::make_unique<policy::FcfsPolicy>();
    if (cfg.kind == "constant_delay")
        return std::make_unique<policy::ConstantDelayPolicy>(
            policy::ConstantDelayConfig{cfg.delay_ns, cfg.takers_only});
    if (cfg.kind == "random_delay")
        return std::make_unique<policy::RandomDelayPolicy>(
            policy::RandomDelayConfig{cfg.max_delay_ns, policy_seed});
    if (cfg.kind == "fba")
        return std::make_unique<policy::FbaPolicy>(
            policy::FbaConfig{cfg.batch_length_ns, cfg.boundary_phase_ns, policy_seed});
    if (cfg.kind == "libra") {
        policy::LibraConfig lc;
        lc.timer_ns = cfg.timer_ns;
        lc.firm_merge = cfg.firm_merge;
        lc.rng_seed = policy_seed;
        lc.cancel_exemption = cfg.cancel_exemption;
        lc.ioc_never_starts_timer = cfg.ioc_never_starts_timer;
        return std::make_unique<policy::LibraPolicy>(std::move(lc));
    }
    throw std::invalid_argument("unknown policy kind: " + cfg.kind);
}

struct RaceBeginEv { std::uint64_t race; };
struct StimulusEv { std::uint64_t race; };
struct UpdateEv { std::uint64_t race; FirmId firm; };
struct ArrivalEv { std::uint64_t race; PlannedOrder po; };
struct TimerEv { std::uint64_t race; policy::BufferKey key; };
struct WakeEv {};

using Payload = std::variant<RaceBeginEv, StimulusEv, UpdateEv, ArrivalEv, TimerEv, WakeEv>;

struct Ev {
    Timestamp at{};
    std::uint64_t ins{0};
    Payload payload;
};

struct EvAfter {
    bool operator()(const Ev& a, const Ev& b) const {
        return std::tie(a.at, a.ins) > std::tie(b.at, b.ins);
    }
};

struct ReleaseEntry {
    Timestamp at{};
    std::uint64_t rank{0};
    Timestamp arrived{};
    OrderSeq seq{0};
    std::uint64_t race{0};
    Role role{};
    Order order{};
};

struct ReleaseAfter {
    bool operator()(const ReleaseEntry& a, const ReleaseEntry& b) const {
        return std::tie(a.at, a.rank, a.arrived, a.seq) > std::tie(b.at, b.rank, b.arrived, b.seq);
    }
};

struct OrderInfo {
    std::uint64_t race{0};
    Role role{};
    FirmId firm{0};
    AccountId account{0};
    Side side{};
    Timestamp arrived{};
    Timestamp fwd_at{};
    std::uint64_t fwd_pos{kNoPos};
    bool filled_quote{false};
};

struct RaceState {
    RaceRecord record{};
    policy::BufferKey contested_key{};
    OrderSeq quote_seq{0};
    Quantity quote_open{0};
    std::optional<Timestamp> opportunity_end{};
    std::vector<OrderSeq> order_seqs;
    std::vector<OrderSeq> taker_seqs;
    std::optional<OrderSeq> cancel_seq{};
    bool cancel_cancelled{false};
    int outstanding{0};
};

class Engine {
public:
    Engine(const ScenarioConfig& cfg, std::ostream* log)
        : cfg_(cfg),
          log_(log),
          quote_race_(is_quote_race(cfg)),
          per_race_instruments_(cfg.instruments.empty()),
          policy_(make_policy(cfg.policy, cfg.seed)),
          stimulus_rng_(Rng::derive(cfg.seed, 1)),
          jitter_rng_(Rng::derive(cfg.seed, 2)) {
        for (const auto& a : cfg_.agents) {
            if (a.strategy == Strategy::Placeholder && attacker_firm_ == 0)
                attacker_firm_ = a.firm;
        }
        for (const auto& a : cfg_.agents) {
            if (a.strategy != Strategy::Placeholder && a.strategy != Strategy::PassiveMaker &&
                honest_firm_ == 0)
                honest_firm_ = a.firm;
        }
        begin_lead_ = cfg_.maker_lead_ns;
        for (const auto& a : cfg_.agents)
            if (a.strategy == Strategy::Placeholder)
                begin_lead_ = std::max(begin_lead_, a.placeholder_lead_ns);
    }

    SimResult run() {
        if (log_) {
            nlohmann::json j{{"ev", "scenario"}, {"name", cfg_.name},
                             {"policy", std::string(policy_->name())},
                             {"seed", cfg_.seed},  {"races", cfg_.races}};
            (*log_) << j.dump() << '\n';
        }
        results_.resize(cfg_.races);
        seed_races();
        while (!queue_.empty()) {
            Ev ev = std::move(const_cast<Ev&>(queue_.top()));
            queue_.pop();
            assert(ev.at >= clock_);
            clock_ = ev.at;
            std::visit([&](auto& p) { handle(p); }, ev.payload);
        }
        SimResult out;
        out.policy_name = std::string(policy_->name());
        out.races = std::move(results_);
        out.counts = counts_;
        return out;
    }

private:
    void schedule(Timestamp at, Payload payload) {
        assert(at >= clock_);
        queue_.push(Ev{at, ins_counter_++, std::move(payload)});
    }

    void seed_races() {
        const Nanos horizon =
            cfg_.horizon_ns > 0 ? cfg_.horizon_ns
                                : static_cast<Nanos>(cfg_.races) * 1'000'000;
        stimuli_.reserve(cfg_.races);
        for (std::uint64_t r = 0; r < cfg_.races; ++r)
            stimuli_.push_back(Timestamp{begin_lead_ + stimulus_rng_.uniform_nanos(0, horizon)});
        for (std::uint64_t r = 0; r < cfg_.races; ++r) {
            race_ref(r);  // creates state
            schedule(stimuli_[r] - begin_lead_, RaceBeginEv{r});
            races_.at(r).outstanding++;
        }
    }

    InstrumentId instrument_for(std::uint64_t race) const {
        if (per_race_instruments_) return static_cast<InstrumentId>(race + 1);
        return cfg_.instruments[race % cfg_.instruments.size()];
    }

    RaceState& race_ref(std::uint64_t race) {
        auto [it, inserted] = races_.try_emplace(race);
        if (inserted) {
            RaceState& rs = it->second;
            rs.record.race_id = race;
            rs.record.stimulus_at = stimuli_.empty() ? Timestamp{} : stimuli_[race];
            rs.record.instrument = instrument_for(race);
            rs.record.side = Side::Buy;
            rs.record.price = cfg_.quote_price;
            rs.record.quantity = cfg_.contested_quantity;
            rs.quote_open = cfg_.contested_quantity;
            rs.contested_key =
                quote_race_
                    ? policy::BufferKey{rs.record.instrument, Side::Buy, cfg_.quote_price}
                    : policy::BufferKey{rs.record.instrument, Side::Buy, std::nullopt};
        }
        return it->second;
    }

    book::LimitOrderBook& book_for(InstrumentId instrument) {
        auto it = books_.find(instrument);
        if (it == books_.end())
            it = books_.emplace(instrument, book::LimitOrderBook(instrument)).first;
        return it->second;
    }

    void handle(RaceBeginEv& ev) {
        RaceState& rs = race_ref(ev.race);
        const Timestamp stimulus = rs.record.stimulus_at;
        auto planned = make_race(cfg_, rs.record.instrument, stimulus, jitter_rng_);
        for (auto& po : planned) {
            if (po.schedule_update) {
                rs.outstanding++;
                schedule(po.plan.update_at, UpdateEv{ev.race, po.order.owner.firm});
            }
            rs.outstanding++;
            const Timestamp at = po.order.arrived_at;
            schedule(at, ArrivalEv{ev.race, std::move(po)});
        }
        rs.outstanding++;
        schedule(stimulus, StimulusEv{ev.race});
        note_resolved(ev.race);
    }

    void handle(StimulusEv& ev) {
        if (log_) {
            nlohmann::json j{{"ev", "stimulus"}, {"race", ev.race}, {"at_ns", clock_.ns}};
            (*log_) << j.dump() << '\n';
        }
        note_resolved(ev.race);
    }

    void handle(UpdateEv& ev) {
        if (log_) {
            nlohmann::json j{{"ev", "update"}, {"race", ev.race}, {"firm", ev.firm},
                             {"at_ns", clock_.ns}};
            (*log_) << j.dump() << '\n';
        }
        note_resolved(ev.race);
    }

    void handle(ArrivalEv& ev) {
        RaceState& rs = races_.at(ev.race);
        Order o = ev.po.order;
        o.seq = ++seq_counter_;
        if (ev.po.cancel_targets_quote) o.target = rs.quote_seq;

        counts_.orders++;
        if (o.order_type == OrderType::Cancel) counts_.cancels++;

        OrderInfo info;
        info.race = ev.race;
        info.role = ev.po.role;
        info.firm = o.owner.firm;
        info.account = o.owner.id;
        info.side = o.side;
        info.arrived = o.arrived_at;
        registry_.emplace(o.seq, info);
        rs.order_seqs.push_back(o.seq);
        if (ev.po.role == Role::Taker) rs.taker_seqs.push_back(o.seq);
        if (ev.po.role == Role::CancelMsg) rs.cancel_seq = o.seq;
        if (ev.po.role == Role::MakerQuote) rs.quote_seq = o.seq;

        if (log_) {
            nlohmann::json j{{"ev", "order"}, {"race", ev.race},
                             {"role", to_string(ev.po.role)}, {"order", to_json(o)}};
            j["jitter_ns"] = ev.po.plan.jitter;
            (*log_) << j.dump() << '\n';
        }

        if (const auto verdict = validate_order(o); verdict != OrderReject::Ok) {
            drop_order(o, to_string(verdict));
            return;
        }

        policy::ArrivalContext ctx;
        book::LimitOrderBook& bk = book_for(o.instrument);
        ctx.book = policy::BookView{bk.best_bid(), bk.best_offer()};
        if (o.order_type == OrderType::Cancel && o.target) {
            auto it = registry_.find(*o.target);
            if (it != registry_.end()) ctx.cancel_target_side = it->second.side;
        }

        const auto action = policy_->on_arrival(o, ctx);
        switch (action.kind) {
            case policy::ArrivalAction::Kind::Schedule: {
                if (log_) {
                    nlohmann::json j{{"ev", "release"}, {"seq", o.seq},
                                     {"release_ns", action.decision.release_at.ns},
                                     {"rank", action.decision.release_rank}};
                    (*log_) << j.dump() << '\n';
                }
                releases_.push(ReleaseEntry{action.decision.release_at,
                                            action.decision.release_rank, o.arrived_at, o.seq,
                                            ev.race, ev.po.role, std::move(o)});
                if (wakes_pending_.insert(action.decision.release_at).second)
                    schedule(action.decision.release_at, WakeEv{});
                break;
            }
            case policy::ArrivalAction::Kind::Buffer: {
                if (log_) {
                    nlohmann::json j{{"ev", "buffer"}, {"seq", o.seq},
                                     {"key", key_json(action.buffer)}};
                    j["timer_deadline_ns"] = action.timer_deadline
                                                 ? nlohmann::json(action.timer_deadline->ns)
                                                 : nlohmann::json();
                    (*log_) << j.dump() << '\n';
                }
                if (action.timer_deadline) {
                    if (ev.po.role == Role::Placeholder && action.buffer == rs.contested_key)
                        counts_.contested_timer_started_by_placeholder++;
                    rs.outstanding++;
                    schedule(*action.timer_deadline, TimerEv{ev.race, action.buffer});
                }
                break;
            }
            case policy::ArrivalAction::Kind::Drop:
                drop_order(o, action.drop_reason);
                break;
        }
    }

    void handle(TimerEv& ev) {
        auto result = policy_->on_timer(ev.key, clock_);
        counts_.drains++;
        if (log_) {
            nlohmann::json out = nlohmann::json::array();
            for (const auto& o : result.releases) out.push_back(o.seq);
            nlohmann::json j{{"ev", "drain"}, {"key", key_json(ev.key)},
                             {"deadline_ns", result.deadline.ns},
                             {"firms", result.firm_permutation}, {"output", out}};
            (*log_) << j.dump() << '\n';
        }
        if (quote_race_ && attacker_firm_ != 0 && honest_firm_ != 0) {
            const RaceState& rs = races_.at(ev.race);
            if (ev.key == rs.contested_key) {
                counts_.placeholding_checks++;
                if (policy::placeholding_resistance_check(result.releases, attacker_firm_,
                                                          honest_firm_, cfg_.policy.firm_merge))
                    counts_.placeholding_passed++;
            }
        }
        for (auto& o : result.releases) {
            const std::uint64_t race = registry_.at(o.seq).race;
            forward_order(std::move(o), race);
        }
        note_resolved(ev.race);
    }

    void handle(WakeEv&) {
        wakes_pending_.erase(clock_);
        while (!releases_.empty() && releases_.top().at == clock_) {
            ReleaseEntry e = std::move(const_cast<ReleaseEntry&>(releases_.top()));
            releases_.pop();
            forward_order(std::move(e.order), e.race);
        }
    }

    void drop_order(const Order& o, const char* reason) {
        counts_.drops++;
        if (log_) {
            nlohmann::json j{{"ev", "drop"}, {"seq", o.seq}, {"reason", reason}};
            (*log_) << j.dump() << '\n';
        }
        note_resolved(registry_.at(o.seq).race);
    }

    void forward_order(Order o, std::uint64_t race) {
        o.forwarded_at = clock_;
        OrderInfo& info = registry_.at(o.seq);
        info.fwd_at = clock_;
        info.fwd_pos = ++fwd_counter_;
        if (log_) {
            nlohmann::json j{{"ev", "forward"}, {"seq", o.seq}, {"at_ns", clock_.ns},
                             {"pos", info.fwd_pos}};
            (*log_) << j.dump() << '\n';
        }

        RaceState& rs = races_.at(race);
        book::LimitOrderBook& bk = book_for(o.instrument);

        if (o.order_type == OrderType::Cancel) {
            const auto result = bk.cancel(o);
            if (log_) {
                nlohmann::json j{{"ev", "cancel_result"}, {"seq", o.seq},
                                 {"target", o.target ? nlohmann::json(*o.target)
                                                     : nlohmann::json()},
                                 {"result", result == book::CancelResult::Cancelled
                                                ? "cancelled" : "too_late"}};
                (*log_) << j.dump() << '\n';
            }
            if (result == book::CancelResult::Cancelled && o.target &&
                *o.target == rs.quote_seq) {
                rs.cancel_cancelled = true;
                rs.quote_open = 0;
                if (!rs.opportunity_end) rs.opportunity_end = clock_;
            }
            note_resolved(race);
            return;
        }

        const auto reports = bk.submit(o);
        counts_.fills += reports.size();
        for (const auto& rep : reports) {
            if (log_) {
                nlohmann::json j{{"ev", "fill"}, {"report", to_json(rep)}};
                (*log_) << j.dump() << '\n';
            }
            auto maker_it = registry_.find(rep.maker_order);
            if (maker_it == registry_.end()) continue;
            RaceState& maker_race = races_.at(maker_it->second.race);
            if (rep.maker_order == maker_race.quote_seq) {
                if (!maker_race.record.winner) maker_race.record.winner = info.firm;
                maker_race.quote_open -= rep.quantity;
                info.filled_quote = true;
                if (maker_race.quote_open <= 0 && !maker_race.opportunity_end)
                    maker_race.opportunity_end = clock_;
            }
        }
        if (quote_race_ && info.role == Role::Taker && !rs.opportunity_end) {
            rs.record.winner = info.firm;
            rs.opportunity_end = clock_;
        }
        note_resolved(race);
    }

    void note_resolved(std::uint64_t race) {
        RaceState& rs = races_.at(race);
        if (--rs.outstanding == 0) finalize_race(race);
    }

    void finalize_race(std::uint64_t race) {
        RaceState& rs = races_.at(race);
        RaceRecord& rec = rs.record;

        std::map<FirmId, RaceCompetitor> firsts;
        auto note_competitor = [&](OrderSeq seq) {
            const OrderInfo& info = registry_.at(seq);
            auto [it, inserted] = firsts.try_emplace(
                info.firm, RaceCompetitor{info.firm, info.account, info.arrived});
            if (!inserted && info.arrived < it->second.arrived_at)
                it->second = RaceCompetitor{info.firm, info.account, info.arrived};
        };
        for (OrderSeq seq : rs.taker_seqs) note_competitor(seq);
        if (rs.cancel_seq) note_competitor(*rs.cancel_seq);
        rec.competitors.reserve(firsts.size());
        for (auto& [firm, c] : firsts) rec.competitors.push_back(c);

        std::set<FirmId> contenders;
        for (OrderSeq seq : rs.taker_seqs) {
            const OrderInfo& info = registry_.at(seq);
            if (info.fwd_pos == kNoPos) continue;
            if (rs.opportunity_end && info.fwd_at > *rs.opportunity_end) continue;
            contenders.insert(info.firm);
        }
        rec.multi_participant = contenders.size() >= 2;

        if (rs.cancel_seq) {
            const OrderInfo& cancel = registry_.at(*rs.cancel_seq);
            bool overtake = false;
            bool any_quote_fill = false;
            for (OrderSeq seq : rs.taker_seqs) {
                const OrderInfo& t = registry_.at(seq);
                if (t.arrived < cancel.arrived && cancel.fwd_pos < t.fwd_pos) overtake = true;
                if (t.filled_quote) any_quote_fill = true;
            }
            if (overtake) {
                counts_.cancel_overtakes++;
                if (rs.cancel_cancelled && !any_quote_fill) counts_.matches_prevented++;
            }
        }

        for (OrderSeq seq : rs.order_seqs) registry_.erase(seq);
        if (per_race_instruments_) books_.erase(rec.instrument);
        results_[race] = std::move(rec);
        races_.erase(race);
    }

    const ScenarioConfig& cfg_;
    std::ostream* log_;
    bool quote_race_;
    bool per_race_instruments_;
    std::unique_ptr<policy::ReorderPolicy> policy_;
    Rng stimulus_rng_;
    Rng jitter_rng_;
    FirmId attacker_firm_{0};
    FirmId honest_firm_{0};
    Nanos begin_lead_{0};

    Timestamp clock_{};
    std::uint64_t ins_counter_{0};
    std::uint64_t seq_counter_{0};
    std::uint64_t fwd_counter_{0};
    std::priority_queue<Ev, std::vector<Ev>, EvAfter> queue_;
    std::priority_queue<ReleaseEntry, std::vector<ReleaseEntry>, ReleaseAfter> releases_;
    std::set<Timestamp> wakes_pending_;
    std::unordered_map<InstrumentId, book::LimitOrderBook> books_;
    std::unordered_map<OrderSeq, OrderInfo> registry_;
    std::unordered_map<std::uint64_t, RaceState> races_;
    std::vector<Timestamp> stimuli_;
    std::vector<RaceRecord> results_;
    SimCounts counts_{};
};

}  // namespace

bool is_quote_race(const ScenarioConfig& cfg) {
    for (const auto& a : cfg.agents)
        if (a.strategy == Strategy::Placeholder) return true;
    return false;
}

std::vector<PlannedOrder> make_race(const ScenarioConfig& cfg, InstrumentId instrument,
                                    Timestamp stimulus, Rng& jitter_rng) {
    const bool quote_race = is_quote_race(cfg);
    // The venue takes the same time to prepare everyone's update.
    const Timestamp update_sent = stimulus + cfg.update_delta_ns;
    std::vector<PlannedOrder> out;

    if (!quote_race) {
        // The contested quote rests well before the stimulus, whatever delay
        // the active policy adds on the way in.
        for (const auto& a : cfg.agents) {
            if (a.strategy != Strategy::PassiveMaker) continue;
            PlannedOrder po;
            po.role = Role::MakerQuote;
            po.order.owner = ParticipantId{a.account, a.firm};
            po.order.instrument = instrument;
            po.order.order_type = OrderType::Limit;
            po.order.side = Side::Sell;
            po.order.limit_price = cfg.quote_price;
            po.order.quantity = cfg.contested_quantity;
            po.order.submitted_at = stimulus - cfg.maker_lead_ns;
            po.order.arrived_at = po.order.submitted_at;
            out.push_back(std::move(po));
            break;  // one contested quote per race
        }
    }

    for (const auto& a : cfg.agents) {
        const LatencyProfile& profile = cfg.latency_profiles.at(a.firm);
        if (a.strategy == Strategy::PassiveMaker) {
            if (!a.cancels_stale_quote) continue;
            const ArrivalPlan plan = plan_arrival(profile, update_sent, jitter_rng);
            PlannedOrder po;
            po.role = Role::CancelMsg;
            po.plan = plan;
            po.schedule_update = true;
            po.cancel_targets_quote = true;
            po.order.owner = ParticipantId{a.account, a.firm};
            po.order.instrument = instrument;
            po.order.order_type = OrderType::Cancel;
            po.order.side = Side::Sell;
            po.order.quantity = 0;
            po.order.submitted_at = plan.submitted_at;
            po.order.arrived_at = plan.arrived_at;
            out.push_back(std::move(po));
            continue;
        }

        if (a.strategy == Strategy::Placeholder) {
            PlannedOrder pre;
            pre.role = Role::Placeholder;
            pre.order.owner = ParticipantId{a.account, a.firm};
            pre.order.instrument = instrument;
            pre.order.order_type = OrderType::Limit;
            pre.order.side = Side::Buy;
            pre.order.limit_price = cfg.quote_price - a.placeholder_offset_ticks;
            pre.order.quantity =
                a.placeholder_quantity > 0 ? a.placeholder_quantity : cfg.min_quantity;
            pre.order.submitted_at = stimulus - a.placeholder_lead_ns;
            pre.order.arrived_at = pre.order.submitted_at;
            out.push_back(std::move(pre));
        }

        ArrivalPlan plan = plan_arrival(profile, update_sent, jitter_rng);
        if (a.strategy == Strategy::BangTheClose && cfg.policy.kind == "fba") {
            // Delay so the order lands a fixed margin before its batch closes.
            const policy::FbaConfig grid{cfg.policy.batch_length_ns,
                                         cfg.policy.boundary_phase_ns, 0};
            const Timestamp target =
                policy::fba_batch_end(plan.arrived_at, grid) - a.bang_margin_ns;
            if (target > plan.arrived_at) {
                const Nanos shift = target - plan.arrived_at;
                plan.submitted_at = plan.submitted_at + shift;
                plan.arrived_at = target;
            }
        }

        const int copies = a.strategy == Strategy::Duplicator ? a.duplicates : 1;
        for (int c = 0; c < copies; ++c) {
            PlannedOrder po;
            po.role = Role::Taker;
            po.plan = plan;
            po.schedule_update = c == 0;
            po.order.owner = ParticipantId{a.account, a.firm};
            po.order.instrument = instrument;
            po.order.side = Side::Buy;
            po.order.quantity = a.quantity;
            po.order.submitted_at = plan.submitted_at;
            po.order.arrived_at = plan.arrived_at;
            if (quote_race) {
                // Queue-position race: everyone quotes the contested level.
                po.order.order_type = OrderType::Limit;
                po.order.limit_price = cfg.quote_price;
            } else {
                po.order.order_type = a.order_type;
                if (a.order_type != OrderType::Market)
                    po.order.limit_price = cfg.quote_price + a.aggression_ticks;
            }
            out.push_back(std::move(po));
        }
    }
    return out;
}

SimResult run_scenario(const ScenarioConfig& cfg, std::ostream* event_log) {
    if (const auto errors = validate_scenario(cfg); !errors.empty()) {
        std::ostringstream msg;
        msg << "invalid scenario config:";
        for (const auto& e : errors) msg << "\n  - " << e;
        throw std::invalid_argument(msg.str());
    }
    Engine engine(cfg, event_log);
    return engine.run();
}

SnipingCounts sniping_scenario(const ScenarioConfig& cfg, std::ostream* event_log) {
    const SimResult result = run_scenario(cfg, event_log);
    return SnipingCounts{result.races.size(), result.counts.cancel_overtakes,
                         result.counts.matches_prevented};
}

}  // namespace fairmatch::sim
