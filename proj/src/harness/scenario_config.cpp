#include "fairmatch/harness/scenario_config.hpp"

#include <fstream>
#include <sstream>

namespace fairmatch::harness {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

Nanos get_nanos(const json& j, const char* key, Nanos fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<Nanos>();
}

sim::JitterSpec jitter_from_json(const json& j, const std::string& where) {
    sim::JitterSpec spec;
    const std::string kind = j.value("kind", "none");
    if (kind == "none") return spec;
    if (kind == "uniform") {
        spec.kind = sim::JitterSpec::Kind::Uniform;
        spec.lo = get_nanos(j, "lo_ns", 0);
        spec.hi = get_nanos(j, "hi_ns", 0);
        return spec;
    }
    if (kind == "truncated_normal") {
        spec.kind = sim::JitterSpec::Kind::TruncNormal;
        spec.mean = j.value("mean_ns", 0.0);
        spec.stddev = j.value("stddev_ns", 0.0);
        spec.lo = get_nanos(j, "lo_ns", 0);
        spec.hi = get_nanos(j, "hi_ns", 0);
        return spec;
    }
    fail(where, "unknown jitter kind '" + kind + "'");
}

json jitter_to_json(const sim::JitterSpec& spec) {
    switch (spec.kind) {
        case sim::JitterSpec::Kind::None:
            return json{{"kind", "none"}};
        case sim::JitterSpec::Kind::Uniform:
            return json{{"kind", "uniform"}, {"lo_ns", spec.lo}, {"hi_ns", spec.hi}};
        case sim::JitterSpec::Kind::TruncNormal:
            return json{{"kind", "truncated_normal"}, {"mean_ns", spec.mean},
                        {"stddev_ns", spec.stddev}, {"lo_ns", spec.lo}, {"hi_ns", spec.hi}};
    }
    return json{{"kind", "none"}};
}

sim::LatencyProfile profile_from_json(const json& j, const std::string& where) {
    sim::LatencyProfile p;
    p.update_offset_ns = get_nanos(j, "update_offset_ns", 0);
    p.update_path_ns = get_nanos(j, "update_path_ns", 0);
    p.reaction_ns = get_nanos(j, "reaction_ns", 0);
    p.transmit_ns = get_nanos(j, "transmit_ns", 0);
    p.gateway_ns = get_nanos(j, "gateway_ns", 0);
    if (j.contains("jitter")) {
        // Shorthand: the same spec on every leg.
        const auto spec = jitter_from_json(j.at("jitter"), where + ".jitter");
        p.update_offset_jitter = p.update_path_jitter = p.reaction_jitter = p.transmit_jitter =
            p.gateway_jitter = spec;
    }
    auto leg = [&](const char* key, sim::JitterSpec& slot) {
        if (j.contains(key)) slot = jitter_from_json(j.at(key), where + "." + key);
    };
    leg("update_offset_jitter", p.update_offset_jitter);
    leg("update_path_jitter", p.update_path_jitter);
    leg("reaction_jitter", p.reaction_jitter);
    leg("transmit_jitter", p.transmit_jitter);
    leg("gateway_jitter", p.gateway_jitter);
    if (j.contains("gateway_steps")) {
        for (const auto& s : j.at("gateway_steps"))
            p.gateway_steps.push_back(
                sim::GatewayStep{Timestamp{s.at("at_ns").get<Nanos>()},
                                 s.at("extra_ns").get<Nanos>()});
    }
    return p;
}

json profile_to_json(const sim::LatencyProfile& p) {
    json j{{"update_offset_ns", p.update_offset_ns}, {"update_path_ns", p.update_path_ns},
           {"reaction_ns", p.reaction_ns},           {"transmit_ns", p.transmit_ns},
           {"gateway_ns", p.gateway_ns}};
    if (p.update_offset_jitter.active()) j["update_offset_jitter"] = jitter_to_json(p.update_offset_jitter);
    if (p.update_path_jitter.active()) j["update_path_jitter"] = jitter_to_json(p.update_path_jitter);
    if (p.reaction_jitter.active()) j["reaction_jitter"] = jitter_to_json(p.reaction_jitter);
    if (p.transmit_jitter.active()) j["transmit_jitter"] = jitter_to_json(p.transmit_jitter);
    if (p.gateway_jitter.active()) j["gateway_jitter"] = jitter_to_json(p.gateway_jitter);
    if (!p.gateway_steps.empty()) {
        json steps = json::array();
        for (const auto& s : p.gateway_steps)
            steps.push_back(json{{"at_ns", s.at.ns}, {"extra_ns", s.extra}});
        j["gateway_steps"] = steps;
    }
    return j;
}

sim::AgentSpec agent_from_json(const json& j, const std::string& where) {
    sim::AgentSpec a;
    a.account = j.at("account").get<AccountId>();
    a.firm = j.value("firm", a.account);
    const std::string strategy = j.value("strategy", "reactive_taker");
    const auto parsed = sim::strategy_from_string(strategy);
    if (!parsed) fail(where, "unknown strategy '" + strategy + "'");
    a.strategy = *parsed;
    a.quantity = j.value("quantity", Quantity{1});
    if (j.contains("order_type")) {
        const auto t = order_type_from_string(j.at("order_type").get<std::string>());
        if (!t) fail(where, "unknown order_type");
        a.order_type = *t;
    }
    a.aggression_ticks = j.value("aggression_ticks", std::int64_t{0});
    a.duplicates = j.value("duplicates", 1);
    a.placeholder_lead_ns = get_nanos(j, "placeholder_lead_ns", 0);
    a.placeholder_offset_ticks = j.value("placeholder_offset_ticks", std::int64_t{0});
    a.placeholder_quantity = j.value("placeholder_quantity", Quantity{0});
    a.cancels_stale_quote = j.value("cancels_stale_quote", false);
    a.bang_margin_ns = get_nanos(j, "bang_margin_ns", 0);
    return a;
}

json agent_to_json(const sim::AgentSpec& a) {
    json j{{"account", a.account},
           {"firm", a.firm},
           {"strategy", sim::to_string(a.strategy)},
           {"quantity", a.quantity},
           {"order_type", to_string(a.order_type)}};
    if (a.aggression_ticks) j["aggression_ticks"] = a.aggression_ticks;
    if (a.duplicates != 1) j["duplicates"] = a.duplicates;
    if (a.placeholder_lead_ns) j["placeholder_lead_ns"] = a.placeholder_lead_ns;
    if (a.placeholder_offset_ticks) j["placeholder_offset_ticks"] = a.placeholder_offset_ticks;
    if (a.placeholder_quantity) j["placeholder_quantity"] = a.placeholder_quantity;
    if (a.cancels_stale_quote) j["cancels_stale_quote"] = true;
    if (a.bang_margin_ns) j["bang_margin_ns"] = a.bang_margin_ns;
    return j;
}

sim::PolicyConfig policy_from_json(const json& j) {
    sim::PolicyConfig p;
    p.kind = j.value("kind", "fcfs");
    p.delay_ns = get_nanos(j, "delay_ns", p.delay_ns);
    p.takers_only = j.value("takers_only", false);
    p.max_delay_ns = get_nanos(j, "max_delay_ns", p.max_delay_ns);
    p.batch_length_ns = get_nanos(j, "batch_length_ns", p.batch_length_ns);
    p.boundary_phase_ns = get_nanos(j, "boundary_phase_ns", 0);
    p.timer_ns = get_nanos(j, "timer_ns", p.timer_ns);
    p.cancel_exemption = j.value("cancel_exemption", true);
    p.ioc_never_starts_timer = j.value("ioc_never_starts_timer", false);
    if (j.contains("firm_merge"))
        for (const auto& [account, firm] : j.at("firm_merge").items())
            p.firm_merge[static_cast<AccountId>(std::stol(account))] = firm.get<FirmId>();
    if (j.contains("rng_seed")) p.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    return p;
}

json policy_to_json(const sim::PolicyConfig& p) {
    json j{{"kind", p.kind}};
    if (p.kind == "constant_delay") {
        j["delay_ns"] = p.delay_ns;
        j["takers_only"] = p.takers_only;
    } else if (p.kind == "random_delay") {
        j["max_delay_ns"] = p.max_delay_ns;
    } else if (p.kind == "fba") {
        j["batch_length_ns"] = p.batch_length_ns;
        j["boundary_phase_ns"] = p.boundary_phase_ns;
    } else if (p.kind == "libra") {
        j["timer_ns"] = p.timer_ns;
        j["cancel_exemption"] = p.cancel_exemption;
        j["ioc_never_starts_timer"] = p.ioc_never_starts_timer;
        if (!p.firm_merge.empty()) {
            json merge = json::object();
            for (const auto& [account, firm] : p.firm_merge)
                merge[std::to_string(account)] = firm;
            j["firm_merge"] = merge;
        }
    }
    if (p.rng_seed) j["rng_seed"] = *p.rng_seed;
    return j;
}

}  // namespace

sim::ScenarioConfig scenario_from_json(const json& j) {
    sim::ScenarioConfig cfg;
    cfg.name = j.value("name", "scenario");
    if (j.contains("policy")) cfg.policy = policy_from_json(j.at("policy"));
    if (j.contains("instruments"))
        cfg.instruments = j.at("instruments").get<std::vector<InstrumentId>>();
    if (j.contains("agents")) {
        std::size_t i = 0;
        for (const auto& a : j.at("agents")) {
            std::ostringstream where;
            where << "agents[" << i++ << "]";
            cfg.agents.push_back(agent_from_json(a, where.str()));
        }
    }
    if (j.contains("latency_profiles"))
        for (const auto& [firm, profile] : j.at("latency_profiles").items())
            cfg.latency_profiles[static_cast<FirmId>(std::stol(firm))] =
                profile_from_json(profile, "latency_profiles[" + firm + "]");
    cfg.races = j.value("races", std::uint64_t{1});
    cfg.horizon_ns = get_nanos(j, "horizon_ns", 0);
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.update_delta_ns = get_nanos(j, "update_delta_ns", 0);
    cfg.min_quantity = j.value("min_quantity", Quantity{1});
    cfg.contested_quantity = j.value("contested_quantity", Quantity{1});
    cfg.quote_price = Price{j.value("quote_price_ticks", std::int64_t{100})};
    cfg.maker_lead_ns = get_nanos(j, "maker_lead_ns", cfg.maker_lead_ns);
    cfg.replicas = j.value("replicas", 1);
    cfg.tolerance = j.value("tolerance", 0.02);
    if (j.contains("outputs")) {
        const auto& out = j.at("outputs");
        cfg.outputs.event_log = out.value("event_log", "");
        cfg.outputs.races_csv = out.value("races_csv", "");
        cfg.outputs.summary = out.value("summary", "");
    }
    return cfg;
}

json scenario_to_json(const sim::ScenarioConfig& cfg) {
    json agents = json::array();
    for (const auto& a : cfg.agents) agents.push_back(agent_to_json(a));
    json profiles = json::object();
    for (const auto& [firm, p] : cfg.latency_profiles)
        profiles[std::to_string(firm)] = profile_to_json(p);
    json j{{"name", cfg.name},
           {"policy", policy_to_json(cfg.policy)},
           {"agents", agents},
           {"latency_profiles", profiles},
           {"races", cfg.races},
           {"seed", cfg.seed},
           {"min_quantity", cfg.min_quantity},
           {"contested_quantity", cfg.contested_quantity},
           {"quote_price_ticks", cfg.quote_price.ticks},
           {"maker_lead_ns", cfg.maker_lead_ns},
           {"replicas", cfg.replicas},
           {"tolerance", cfg.tolerance}};
    if (cfg.horizon_ns > 0) j["horizon_ns"] = cfg.horizon_ns;
    if (cfg.update_delta_ns > 0) j["update_delta_ns"] = cfg.update_delta_ns;
    if (!cfg.instruments.empty()) j["instruments"] = cfg.instruments;
    if (!cfg.outputs.event_log.empty() || !cfg.outputs.races_csv.empty() ||
        !cfg.outputs.summary.empty()) {
        j["outputs"] = json{{"event_log", cfg.outputs.event_log},
                            {"races_csv", cfg.outputs.races_csv},
                            {"summary", cfg.outputs.summary}};
    }
    return j;
}

void apply_overrides(sim::ScenarioConfig& cfg, const RunOverrides& o) {
    if (o.seed) cfg.seed = *o.seed;
    if (o.races) cfg.races = *o.races;
    if (o.policy) cfg.policy.kind = *o.policy;
    if (o.timer_ns) {
        if (cfg.policy.kind == "libra") cfg.policy.timer_ns = *o.timer_ns;
        else if (cfg.policy.kind == "fba") cfg.policy.batch_length_ns = *o.timer_ns;
        else if (cfg.policy.kind == "constant_delay") cfg.policy.delay_ns = *o.timer_ns;
        else if (cfg.policy.kind == "random_delay") cfg.policy.max_delay_ns = *o.timer_ns;
    }
}

sim::ScenarioConfig load_scenario(const std::filesystem::path& path,
                                  const RunOverrides& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": file not found or unreadable");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    sim::ScenarioConfig cfg;
    try {
        cfg = scenario_from_json(j);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    apply_overrides(cfg, overrides);
    if (const auto errors = sim::validate_scenario(cfg); !errors.empty()) {
        std::ostringstream msg;
        msg << path.string() << ": invalid scenario config";
        for (const auto& e : errors) msg << "\n  - " << e;
        throw ConfigError(msg.str());
    }
    return cfg;
}

}  // namespace fairmatch::harness
