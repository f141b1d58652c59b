#include "fairmatch/harness/runner.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "fairmatch/book/order_book.hpp"
#include "fairmatch/json_io.hpp"

namespace fairmatch::harness {

namespace {

std::uint64_t replica_seed(std::uint64_t base, int replica) {
    return Rng::derive(base, 0x5EEDull + static_cast<std::uint64_t>(replica));
}

// --out-dir redirects declared outputs; it only fills in the default file
// set when the config declares none at all.
std::filesystem::path resolve_output(const std::string& configured,
                                     const std::optional<std::string>& out_dir,
                                     const char* fallback, bool any_configured) {
    if (configured.empty() && (any_configured || !out_dir)) return {};
    std::filesystem::path p = configured.empty() ? std::filesystem::path(fallback)
                                                 : std::filesystem::path(configured);
    if (out_dir && p.is_relative()) p = std::filesystem::path(*out_dir) / p;
    return p;
}

void ensure_parent(const std::filesystem::path& p) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

sim::SimResult merge_results(std::vector<sim::SimResult> parts) {
    sim::SimResult merged;
    if (parts.empty()) return merged;
    merged.policy_name = parts.front().policy_name;
    std::uint64_t race_offset = 0;
    for (auto& part : parts) {
        for (auto& race : part.races) {
            race.race_id += race_offset;
            merged.races.push_back(std::move(race));
        }
        race_offset = merged.races.size();
        auto& c = merged.counts;
        const auto& pc = part.counts;
        c.orders += pc.orders;
        c.drops += pc.drops;
        c.cancels += pc.cancels;
        c.fills += pc.fills;
        c.drains += pc.drains;
        c.cancel_overtakes += pc.cancel_overtakes;
        c.matches_prevented += pc.matches_prevented;
        c.contested_timer_started_by_placeholder += pc.contested_timer_started_by_placeholder;
        c.placeholding_checks += pc.placeholding_checks;
        c.placeholding_passed += pc.placeholding_passed;
    }
    return merged;
}

sim::LatencyProfile flat_profile(Nanos reaction_ns) {
    sim::LatencyProfile p;
    p.reaction_ns = reaction_ns;
    return p;
}

}  // namespace

RunResult run_config(sim::ScenarioConfig cfg, const RunOverrides& overrides,
                     std::ostream* console) {
    apply_overrides(cfg, overrides);
    if (const auto errors = sim::validate_scenario(cfg); !errors.empty()) {
        std::ostringstream msg;
        msg << "invalid scenario config";
        for (const auto& e : errors) msg << "\n  - " << e;
        throw ConfigError(msg.str());
    }

    const bool any_configured = !cfg.outputs.event_log.empty() ||
                                !cfg.outputs.races_csv.empty() || !cfg.outputs.summary.empty();
    const auto log_path =
        resolve_output(cfg.outputs.event_log, overrides.out_dir, "events.jsonl", any_configured);
    const auto csv_path =
        resolve_output(cfg.outputs.races_csv, overrides.out_dir, "races.csv", any_configured);
    const auto summary_base =
        resolve_output(cfg.outputs.summary, overrides.out_dir, "summary", any_configured);

    RunResult out;
    const int replicas = cfg.replicas;
    if (replicas == 1) {
        std::ofstream log_file;
        std::ostream* log = nullptr;
        if (!log_path.empty()) {
            ensure_parent(log_path);
            log_file.open(log_path);
            log = &log_file;
            out.written.push_back(log_path);
        }
        out.result = sim::run_scenario(cfg, log);
    } else {
        // Replicas share nothing and merge by index, so thread scheduling
        // cannot change the merged statistics.
        std::vector<sim::ScenarioConfig> configs(replicas, cfg);
        std::uint64_t assigned = 0;
        for (int i = 0; i < replicas; ++i) {
            const std::uint64_t share =
                cfg.races / replicas + (static_cast<std::uint64_t>(i) < cfg.races % replicas);
            configs[i].races = share;
            configs[i].seed = replica_seed(cfg.seed, i);
            configs[i].replicas = 1;
            assigned += share;
        }
        std::vector<sim::SimResult> parts(replicas);
        std::vector<std::ostringstream> logs(replicas);
        std::vector<std::thread> workers;
        workers.reserve(replicas);
        for (int i = 0; i < replicas; ++i) {
            workers.emplace_back([&, i] {
                if (configs[i].races == 0) return;
                parts[i] = sim::run_scenario(configs[i],
                                             log_path.empty() ? nullptr : &logs[i]);
            });
        }
        for (auto& w : workers) w.join();
        if (!log_path.empty()) {
            for (int i = 0; i < replicas; ++i) {
                auto p = log_path;
                p += "." + std::to_string(i);
                ensure_parent(p);
                std::ofstream f(p);
                f << logs[i].str();
                out.written.push_back(p);
            }
        }
        out.result = merge_results(std::move(parts));
    }

    out.fairness =
        build_fairness_report(out.result.races, expected_latencies(cfg), cfg.tolerance);

    if (!csv_path.empty()) {
        ensure_parent(csv_path);
        std::ofstream f(csv_path);
        write_races_csv(f, out.result.races, out.result.policy_name);
        out.written.push_back(csv_path);
    }
    if (!summary_base.empty()) {
        ensure_parent(summary_base);
        auto txt = summary_base;
        txt += ".txt";
        auto js = summary_base;
        js += ".json";
        std::ofstream tf(txt);
        write_summary_text(tf, cfg, out.result, out.fairness);
        std::ofstream jf(js);
        jf << summary_json(cfg, out.result, out.fairness).dump(2) << '\n';
        out.written.push_back(txt);
        out.written.push_back(js);
    }
    if (console && !overrides.quiet) write_summary_text(*console, cfg, out.result, out.fairness);

    out.cfg = std::move(cfg);
    return out;
}

RunResult run_scenario_file(const std::filesystem::path& path, const RunOverrides& overrides,
                            std::ostream* console) {
    auto cfg = load_scenario(path, overrides);
    RunOverrides rest = overrides;  // already applied by load_scenario
    rest.seed.reset();
    rest.races.reset();
    rest.policy.reset();
    rest.timer_ns.reset();
    return run_config(std::move(cfg), rest, console);
}

std::vector<SweepRow> sweep_batch_length(const sim::ScenarioConfig& base,
                                         const std::vector<Nanos>& timer_values) {
    std::vector<SweepRow> rows;
    rows.reserve(timer_values.size());
    for (const Nanos timer : timer_values) {
        sim::ScenarioConfig cfg = base;
        cfg.policy.timer_ns = timer;
        cfg.outputs = {};
        const auto result = sim::run_scenario(cfg);
        SweepRow row;
        row.timer_ns = timer;
        row.races = result.races.size();
        for (const auto& race : result.races) {
            if (race.multi_participant) {
                row.multi_participant_races++;
                row.contested_quantity += race.quantity;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "timer_ns,multi_participant_races,contested_quantity\n";
    for (const auto& r : rows)
        out << r.timer_ns << ',' << r.multi_participant_races << ',' << r.contested_quantity
            << '\n';
}

AttackConfig default_attack_config() {
    AttackConfig cfg;
    cfg.attacks = {"duplicates", "placeholding", "sybil", "sniping"};
    cfg.policies = {"random_delay", "libra"};
    return cfg;
}

AttackConfig attack_config_from_json(const nlohmann::json& j) {
    AttackConfig cfg = default_attack_config();
    if (j.contains("attacks")) cfg.attacks = j.at("attacks").get<std::vector<std::string>>();
    if (j.contains("policies")) cfg.policies = j.at("policies").get<std::vector<std::string>>();
    cfg.races = j.value("races", cfg.races);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    return cfg;
}

namespace {

AttackOutcome duplicates_outcome(const std::string& policy, const AttackConfig& cfg) {
    AttackOutcome out{"duplicates", policy, {}, cfg.tolerance, "", ""};
    constexpr FirmId attacker = 2;
    const auto attacked = run_config(make_duplicates_scenario(policy, 5, cfg.races, cfg.seed));
    const auto baseline = run_config(make_duplicates_scenario(policy, 1, cfg.races, cfg.seed));
    const double win_k = wins_of(attacked.result.races, attacker) /
                         static_cast<double>(attacked.result.races.size());
    const double win_1 = wins_of(baseline.result.races, attacker) /
                         static_cast<double>(baseline.result.races.size());
    const auto [lo, hi] =
        wilson_interval(wins_of(attacked.result.races, attacker), attacked.result.races.size());
    const double ci_width = hi - lo;
    out.metrics = {{"attacker_win_rate_k5", win_k},
                   {"attacker_win_rate_k1", win_1},
                   {"ci95_width", ci_width}};
    if (win_k > win_1 + ci_width) {
        out.verdict = "vulnerable";
        out.detail = "duplicates raise the attacker's win rate beyond the 95% CI width";
    } else if (win_k <= win_1 + cfg.tolerance && win_k + cfg.tolerance >= win_1) {
        out.verdict = "resistant";
        out.detail = "k=5 win rate within tolerance of the single-copy rate";
    } else {
        out.verdict = "inconclusive";
        out.detail = "rates differ but not beyond the CI width";
    }
    return out;
}

AttackOutcome placeholding_outcome(const AttackConfig& cfg) {
    AttackOutcome out{"placeholding", "libra", {}, cfg.tolerance, "", ""};
    const std::uint64_t races = std::min<std::uint64_t>(cfg.races, 5'000);
    const auto same_level = run_config(make_placeholding_scenario(0, races, cfg.seed));
    const auto off_level = run_config(make_placeholding_scenario(50, races, cfg.seed));
    const auto& c = same_level.result.counts;
    const double held = c.placeholding_checks
                            ? static_cast<double>(c.placeholding_passed) / c.placeholding_checks
                            : 0.0;
    out.metrics = {{"honest_first_fraction", held},
                   {"cross_buffer_timer_triggers",
                    static_cast<double>(off_level.result.counts
                                            .contested_timer_started_by_placeholder)}};
    if (held == 1.0 && off_level.result.counts.contested_timer_started_by_placeholder == 0) {
        out.verdict = "resistant";
        out.detail = "honest order precedes the attacker's real order in every drain; "
                     "off-level placeholders never start the contested timer";
    } else {
        out.verdict = "vulnerable";
        out.detail = "placeholder influenced the contested drain";
    }
    return out;
}

AttackOutcome sybil_outcome(const AttackConfig& cfg) {
    AttackOutcome out{"sybil", "libra", {}, cfg.tolerance, "", ""};
    const auto merged = run_config(make_sybil_scenario(true, cfg.races, cfg.seed));
    const auto split = run_config(make_sybil_scenario(false, cfg.races, cfg.seed));
    const double n = static_cast<double>(cfg.races);
    const double merged_share =
        (wins_of(merged.result.races, 10) + wins_of(merged.result.races, 11)) / n;
    const double split_share =
        (wins_of(split.result.races, 10) + wins_of(split.result.races, 11)) / n;
    out.metrics = {{"combined_share_merged", merged_share},
                   {"combined_share_unmerged", split_share}};
    if (std::abs(merged_share - 0.5) <= cfg.tolerance) {
        out.verdict = "resistant";
        out.detail = "with the ownership merge the two accounts share one firm's odds";
    } else {
        out.verdict = "vulnerable";
        out.detail = "merged accounts still won more than one firm's share";
    }
    return out;
}

AttackOutcome sniping_outcome(const AttackConfig& cfg) {
    AttackOutcome out{"sniping", "libra", {}, cfg.tolerance, "", ""};
    const std::uint64_t races = std::min<std::uint64_t>(cfg.races, 10'000);
    const auto on = run_config(make_sniping_scenario(true, races, cfg.seed));
    const auto off = run_config(make_sniping_scenario(false, races, cfg.seed));
    out.metrics = {
        {"overtakes_exemption_on", static_cast<double>(on.result.counts.cancel_overtakes)},
        {"overtakes_exemption_off", static_cast<double>(off.result.counts.cancel_overtakes)},
        {"matches_prevented_on", static_cast<double>(on.result.counts.matches_prevented)}};
    if (on.result.counts.cancel_overtakes > 0 &&
        off.result.counts.cancel_overtakes < on.result.counts.cancel_overtakes) {
        out.verdict = "protective";
        out.detail = "the cancel fast path lets slow makers outrace buffered snipers";
    } else {
        out.verdict = "inconclusive";
        out.detail = "exemption made no measurable difference";
    }
    return out;
}

}  // namespace

std::vector<AttackOutcome> attack_battery(const AttackConfig& cfg) {
    std::vector<AttackOutcome> outcomes;
    for (const auto& attack : cfg.attacks) {
        for (const auto& policy : cfg.policies) {
            if (attack == "duplicates") {
                outcomes.push_back(duplicates_outcome(policy, cfg));
                continue;
            }
            // The remaining attacks probe buffering mechanics and only apply
            // to the batching policy.
            if (policy != "libra") {
                outcomes.push_back(AttackOutcome{attack, policy, {}, cfg.tolerance,
                                                 "not-applicable", "attack targets buffering"});
                continue;
            }
            if (attack == "placeholding") outcomes.push_back(placeholding_outcome(cfg));
            else if (attack == "sybil") outcomes.push_back(sybil_outcome(cfg));
            else if (attack == "sniping") outcomes.push_back(sniping_outcome(cfg));
            else outcomes.push_back(AttackOutcome{attack, policy, {}, cfg.tolerance,
                                                  "not-applicable", "unknown attack"});
        }
    }
    return outcomes;
}

void write_attack_table(std::ostream& out, const std::vector<AttackOutcome>& outcomes) {
    out << "attack        policy          verdict         tolerance  metrics\n";
    for (const auto& o : outcomes) {
        out << std::left << std::setw(14) << o.attack << std::setw(16) << o.policy
            << std::setw(16) << o.verdict << std::setw(11) << o.tolerance;
        bool first = true;
        for (const auto& [k, v] : o.metrics) {
            if (!first) out << ", ";
            out << k << "=" << std::setprecision(4) << v;
            first = false;
        }
        out << "\n    " << o.detail << "\n";
    }
}

nlohmann::json attack_outcomes_json(const std::vector<AttackOutcome>& outcomes) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& o : outcomes)
        arr.push_back(nlohmann::json{{"attack", o.attack},
                                     {"policy", o.policy},
                                     {"metrics", o.metrics},
                                     {"tolerance", o.tolerance},
                                     {"verdict", o.verdict},
                                     {"detail", o.detail}});
    return arr;
}

int replay_event_log(const std::filesystem::path& path, std::ostream& diagnostics) {
    std::ifstream in(path);
    if (!in) {
        diagnostics << "replay: cannot open " << path << "\n";
        return 1;
    }
    std::map<OrderSeq, Order> orders;
    std::vector<ExecutionReport> logged_fills;
    std::vector<ExecutionReport> produced_fills;
    std::map<InstrumentId, book::LimitOrderBook> books;
    std::map<OrderSeq, Quantity> filled_so_far;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            diagnostics << "replay: line " << line_no << ": " << e.what() << "\n";
            return 1;
        }
        const std::string ev = j.value("ev", "");
        if (ev == "order") {
            const Order o = order_from_json(j.at("order"));
            orders[o.seq] = o;
        } else if (ev == "fill") {
            logged_fills.push_back(report_from_json(j.at("report")));
        } else if (ev == "forward") {
            const auto seq = j.at("seq").get<OrderSeq>();
            auto it = orders.find(seq);
            if (it == orders.end()) {
                diagnostics << "replay: line " << line_no << ": forward of unknown order " << seq
                            << "\n";
                return 1;
            }
            Order o = it->second;
            o.forwarded_at = Timestamp{j.at("at_ns").get<Nanos>()};
            auto [book_it, inserted] =
                books.try_emplace(o.instrument, book::LimitOrderBook(o.instrument));
            book::LimitOrderBook& bk = book_it->second;
            if (o.order_type == OrderType::Cancel) {
                bk.cancel(o);
                continue;
            }
            for (const auto& rep : bk.submit(o)) {
                filled_so_far[rep.maker_order] += rep.quantity;
                filled_so_far[rep.taker_order] += rep.quantity;
                if (filled_so_far[rep.taker_order] > orders[rep.taker_order].quantity ||
                    (orders.count(rep.maker_order) &&
                     filled_so_far[rep.maker_order] > orders[rep.maker_order].quantity)) {
                    diagnostics << "replay: conservation violated at fill of order "
                                << rep.taker_order << "\n";
                    return 2;
                }
                produced_fills.push_back(rep);
            }
        }
    }
    if (produced_fills.size() != logged_fills.size()) {
        diagnostics << "replay: fill count mismatch, log has " << logged_fills.size()
                    << " but replay produced " << produced_fills.size() << "\n";
        return 2;
    }
    for (std::size_t i = 0; i < produced_fills.size(); ++i) {
        if (!(produced_fills[i] == logged_fills[i])) {
            diagnostics << "replay: fill " << i << " diverges from the log\n";
            return 2;
        }
    }
    diagnostics << "replay: " << orders.size() << " orders, " << logged_fills.size()
                << " fills verified, conservation holds\n";
    return 0;
}

sim::ScenarioConfig make_taker_race_scenario(const std::string& policy_kind, Nanos dtau_ns,
                                             std::uint64_t races, std::uint64_t seed) {
    sim::ScenarioConfig cfg;
    cfg.name = policy_kind + "_two_taker_race";
    cfg.policy.kind = policy_kind;
    cfg.races = races;
    cfg.seed = seed;
    cfg.agents = {
        sim::AgentSpec{99, 99, sim::Strategy::PassiveMaker},
        sim::AgentSpec{1, 1, sim::Strategy::ReactiveTaker},
        sim::AgentSpec{2, 2, sim::Strategy::ReactiveTaker},
    };
    cfg.latency_profiles[99] = flat_profile(0);
    cfg.latency_profiles[1] = flat_profile(2'000'000);
    cfg.latency_profiles[2] = flat_profile(2'000'000 + dtau_ns);
    return cfg;
}

sim::ScenarioConfig make_equalization_scenario(Nanos timer_ns, Nanos fast_latency_ns,
                                               Nanos slow_latency_ns, std::uint64_t races,
                                               std::uint64_t seed) {
    sim::ScenarioConfig cfg = make_taker_race_scenario("libra", 0, races, seed);
    cfg.name = "libra_equalization";
    cfg.policy.timer_ns = timer_ns;
    cfg.latency_profiles[1] = flat_profile(fast_latency_ns);
    cfg.latency_profiles[2] = flat_profile(slow_latency_ns);
    return cfg;
}

sim::ScenarioConfig make_duplicates_scenario(const std::string& policy_kind, int duplicates,
                                             std::uint64_t races, std::uint64_t seed) {
    sim::ScenarioConfig cfg = make_taker_race_scenario(policy_kind, 1'000'000, races, seed);
    cfg.name = policy_kind + "_duplicates";
    auto& attacker = cfg.agents[2];
    attacker.strategy = sim::Strategy::Duplicator;
    attacker.duplicates = duplicates;
    if (policy_kind == "libra") cfg.policy.timer_ns = 2'000'000;  // covers the 1ms gap
    return cfg;
}

sim::ScenarioConfig make_placeholding_scenario(std::int64_t placeholder_offset_ticks,
                                               std::uint64_t races, std::uint64_t seed) {
    sim::ScenarioConfig cfg;
    cfg.name = "libra_placeholding";
    cfg.policy.kind = "libra";
    cfg.policy.timer_ns = 3'000'000;
    cfg.races = races;
    cfg.seed = seed;
    sim::AgentSpec attacker{7, 7, sim::Strategy::Placeholder};
    attacker.placeholder_lead_ns = 2'000'000;
    attacker.placeholder_offset_ticks = placeholder_offset_ticks;
    sim::AgentSpec honest{3, 3, sim::Strategy::ReactiveTaker};
    cfg.agents = {attacker, honest};
    cfg.latency_profiles[7] = flat_profile(900'000);
    cfg.latency_profiles[3] = flat_profile(500'000);
    return cfg;
}

sim::ScenarioConfig make_sybil_scenario(bool merged, std::uint64_t races, std::uint64_t seed) {
    sim::ScenarioConfig cfg;
    cfg.name = merged ? "libra_sybil_merged" : "libra_sybil_unmerged";
    cfg.policy.kind = "libra";
    cfg.policy.timer_ns = 2'000'000;
    cfg.races = races;
    cfg.seed = seed;
    cfg.agents = {
        sim::AgentSpec{99, 99, sim::Strategy::PassiveMaker},
        sim::AgentSpec{10, 10, sim::Strategy::ReactiveTaker},
        sim::AgentSpec{11, 11, sim::Strategy::ReactiveTaker},
        sim::AgentSpec{20, 20, sim::Strategy::ReactiveTaker},
    };
    cfg.latency_profiles[99] = flat_profile(0);
    cfg.latency_profiles[10] = flat_profile(2'400'000);
    cfg.latency_profiles[11] = flat_profile(2'500'000);
    cfg.latency_profiles[20] = flat_profile(2'600'000);
    if (merged) cfg.policy.firm_merge = {{10, 1}, {11, 1}};
    return cfg;
}

sim::ScenarioConfig make_sniping_scenario(bool cancel_exemption, std::uint64_t races,
                                          std::uint64_t seed) {
    sim::ScenarioConfig cfg;
    cfg.name = cancel_exemption ? "libra_sniping_exempt" : "libra_sniping_buffered";
    cfg.policy.kind = "libra";
    cfg.policy.timer_ns = 1'000'000;
    cfg.policy.cancel_exemption = cancel_exemption;
    cfg.races = races;
    cfg.seed = seed;
    sim::AgentSpec maker{9, 9, sim::Strategy::PassiveMaker};
    maker.cancels_stale_quote = true;
    sim::AgentSpec sniper{1, 1, sim::Strategy::Sniper};
    cfg.agents = {maker, sniper};
    auto maker_profile = flat_profile(500'000);
    maker_profile.reaction_jitter =
        sim::JitterSpec{sim::JitterSpec::Kind::Uniform, 0, 2'000'000, 0, 0};
    cfg.latency_profiles[9] = maker_profile;
    cfg.latency_profiles[1] = flat_profile(1'000'000);
    return cfg;
}

sim::ScenarioConfig make_sweep_base_scenario(std::uint64_t races, std::uint64_t seed) {
    sim::ScenarioConfig cfg;
    cfg.name = "libra_sweep_base";
    cfg.policy.kind = "libra";
    cfg.policy.timer_ns = 1'000'000;
    cfg.races = races;
    cfg.seed = seed;
    cfg.agents = {
        sim::AgentSpec{99, 99, sim::Strategy::PassiveMaker},
        sim::AgentSpec{1, 1, sim::Strategy::ReactiveTaker},
        sim::AgentSpec{2, 2, sim::Strategy::ReactiveTaker},
    };
    cfg.latency_profiles[99] = flat_profile(0);
    auto fast = flat_profile(2'000'000);
    fast.reaction_jitter = sim::JitterSpec{sim::JitterSpec::Kind::Uniform, 0, 2'000'000, 0, 0};
    auto slow = flat_profile(3'000'000);
    slow.reaction_jitter = sim::JitterSpec{sim::JitterSpec::Kind::Uniform, 0, 8'000'000, 0, 0};
    cfg.latency_profiles[1] = fast;
    cfg.latency_profiles[2] = slow;
    return cfg;
}

}  // namespace fairmatch::harness
