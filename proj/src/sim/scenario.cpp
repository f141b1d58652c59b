#include "fairmatch/sim/scenario.hpp"

#include <set>
#include <sstream>

#include "fairmatch/sim/simulator.hpp"

namespace fairmatch::sim {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::PassiveMaker: return "passive_maker";
        case Strategy::ReactiveTaker: return "reactive_taker";
        case Strategy::Sniper: return "sniper";
        case Strategy::Placeholder: return "placeholder";
        case Strategy::Duplicator: return "duplicator";
        case Strategy::BangTheClose: return "bang_the_close";
    }
    return "?";
}

std::optional<Strategy> strategy_from_string(std::string_view s) {
    if (s == "passive_maker") return Strategy::PassiveMaker;
    if (s == "reactive_taker") return Strategy::ReactiveTaker;
    if (s == "sniper") return Strategy::Sniper;
    if (s == "placeholder") return Strategy::Placeholder;
    if (s == "duplicator") return Strategy::Duplicator;
    if (s == "bang_the_close") return Strategy::BangTheClose;
    return std::nullopt;
}

const char* to_string(Role r) {
    switch (r) {
        case Role::MakerQuote: return "maker_quote";
        case Role::Taker: return "taker";
        case Role::Placeholder: return "placeholder";
        case Role::CancelMsg: return "cancel";
    }
    return "?";
}

namespace {

bool valid_jitter(const JitterSpec& j, const std::string& where,
                  std::vector<std::string>& errors) {
    if (j.kind == JitterSpec::Kind::None) return true;
    if (j.lo < 0 || j.hi < j.lo) {
        errors.push_back(where + ": jitter bounds must satisfy 0 <= lo <= hi");
        return false;
    }
    if (j.kind == JitterSpec::Kind::TruncNormal && j.stddev < 0)
        errors.push_back(where + ": jitter stddev must be >= 0");
    return true;
}

void check_profile(FirmId firm, const LatencyProfile& p, std::vector<std::string>& errors) {
    std::ostringstream where;
    where << "latency_profiles[" << firm << "]";
    if (p.update_offset_ns < 0 || p.update_path_ns < 0 || p.reaction_ns < 0 ||
        p.transmit_ns < 0 || p.gateway_ns < 0)
        errors.push_back(where.str() + ": latency components must be >= 0");
    valid_jitter(p.update_offset_jitter, where.str(), errors);
    valid_jitter(p.update_path_jitter, where.str(), errors);
    valid_jitter(p.reaction_jitter, where.str(), errors);
    valid_jitter(p.transmit_jitter, where.str(), errors);
    valid_jitter(p.gateway_jitter, where.str(), errors);
    for (const auto& step : p.gateway_steps)
        if (step.extra < 0) errors.push_back(where.str() + ": gateway step extras must be >= 0");
}

}  // namespace

std::vector<std::string> validate_scenario(const ScenarioConfig& cfg) {
    std::vector<std::string> errors;
    auto err = [&](const std::string& m) { errors.push_back(m); };

    if (cfg.races < 1) err("races: must be >= 1");
    if (cfg.replicas < 1) err("replicas: must be >= 1");
    if (cfg.horizon_ns < 0) err("horizon_ns: must be >= 0");
    if (cfg.update_delta_ns < 0) err("update_delta_ns: must be >= 0");
    if (cfg.min_quantity < 1) err("min_quantity: must be >= 1");
    if (cfg.contested_quantity < 1) err("contested_quantity: must be >= 1");
    if (cfg.maker_lead_ns <= 0) err("maker_lead_ns: must be > 0");
    if (!(cfg.tolerance > 0.0 && cfg.tolerance <= 0.5)) err("tolerance: must be in (0, 0.5]");

    const auto& p = cfg.policy;
    const bool known_policy = p.kind == "fcfs" || p.kind == "constant_delay" ||
                              p.kind == "random_delay" || p.kind == "fba" || p.kind == "libra";
    if (!known_policy) err("policy.kind: unknown policy '" + p.kind + "'");
    if (p.kind == "constant_delay" && p.delay_ns < 0) err("policy.delay_ns: must be >= 0");
    if (p.kind == "random_delay" && p.max_delay_ns < 0) err("policy.max_delay_ns: must be >= 0");
    if (p.kind == "fba" && p.batch_length_ns <= 0) err("policy.batch_length_ns: must be > 0");
    if (p.kind == "libra" && p.timer_ns <= 0) err("policy.timer_ns: must be > 0");

    if (cfg.agents.empty()) err("agents: at least one agent is required");
    std::set<AccountId> accounts;
    bool has_maker = false;
    bool has_taker = false;
    bool has_placeholder = false;
    for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
        const AgentSpec& a = cfg.agents[i];
        std::ostringstream where;
        where << "agents[" << i << "]";
        if (!accounts.insert(a.account).second)
            err(where.str() + ": duplicate account id");
        if (!cfg.latency_profiles.count(a.firm))
            err(where.str() + ": firm has no latency profile");
        if (a.quantity < cfg.min_quantity)
            err(where.str() + ": quantity below scenario minimum");
        if (a.duplicates < 1) err(where.str() + ": duplicates must be >= 1");
        if (a.duplicates > 1 && a.strategy != Strategy::Duplicator)
            err(where.str() + ": duplicates > 1 requires the duplicator strategy");
        if (a.cancels_stale_quote && a.strategy != Strategy::PassiveMaker)
            err(where.str() + ": cancels_stale_quote requires the passive_maker strategy");
        if (a.order_type == OrderType::Cancel)
            err(where.str() + ": cancel is not a response order type");
        switch (a.strategy) {
            case Strategy::PassiveMaker: has_maker = true; break;
            case Strategy::Placeholder:
                has_placeholder = true;
                has_taker = true;
                if (a.placeholder_lead_ns <= 0)
                    err(where.str() + ": placeholder_lead_ns must be > 0");
                break;
            case Strategy::BangTheClose:
                if (a.bang_margin_ns < 0) err(where.str() + ": bang_margin_ns must be >= 0");
                has_taker = true;
                break;
            default: has_taker = true; break;
        }
    }
    if (!has_taker) err("agents: at least one responding (non-maker) agent is required");
    if (!has_placeholder && !has_maker)
        err("agents: a passive_maker is required to post the contested quote");
    if (has_placeholder && has_maker)
        err("agents: placeholding scenarios race queue positions at a price level and "
            "take no passive_maker");
    if (has_placeholder && !cfg.instruments.empty())
        err("instruments: placeholding scenarios require per-race instruments (leave empty)");

    for (const auto& [firm, profile] : cfg.latency_profiles) check_profile(firm, profile, errors);
    return errors;
}

}  // namespace fairmatch::sim
