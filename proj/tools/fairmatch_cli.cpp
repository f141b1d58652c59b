#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairmatch/harness/runner.hpp"

namespace {

using fairmatch::Nanos;
using namespace fairmatch::harness;

int cmd_run(const std::string& config_path, const RunOverrides& overrides) {
    const auto result = run_scenario_file(config_path, overrides,
                                          overrides.quiet ? nullptr : &std::cout);
    if (!overrides.quiet)
        for (const auto& p : result.written) std::cout << "wrote " << p.string() << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const RunOverrides& overrides,
              std::vector<Nanos> timers) {
    auto cfg = load_scenario(config_path, overrides);
    if (cfg.policy.kind != "libra")
        throw ConfigError(config_path + ": sweep requires a libra scenario");
    if (timers.empty())
        for (Nanos t = 1; t <= 10; ++t) timers.push_back(t * 1'000'000);
    const auto rows = sweep_batch_length(cfg, timers);
    std::filesystem::path out = overrides.out_dir ? *overrides.out_dir : ".";
    std::filesystem::create_directories(out);
    const auto csv_path = out / "sweep.csv";
    std::ofstream csv(csv_path);
    write_sweep_csv(csv, rows);
    if (!overrides.quiet) {
        write_sweep_csv(std::cout, rows);
        if (rows.size() >= 2 && rows.front().multi_participant_races > 0) {
            const double growth = static_cast<double>(rows.back().multi_participant_races) /
                                  static_cast<double>(rows.front().multi_participant_races);
            std::cout << "growth factor " << rows.front().timer_ns << "ns -> "
                      << rows.back().timer_ns << "ns: " << growth << "\n";
        }
        std::cout << "wrote " << csv_path.string() << "\n";
    }
    return 0;
}

int cmd_attacks(const std::string& config_path, const RunOverrides& overrides) {
    AttackConfig cfg = default_attack_config();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError(config_path + ": file not found or unreadable");
        try {
            cfg = attack_config_from_json(nlohmann::json::parse(in));
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(config_path + ": " + std::string(e.what()));
        }
    }
    if (overrides.seed) cfg.seed = *overrides.seed;
    if (overrides.races) cfg.races = *overrides.races;
    const auto outcomes = attack_battery(cfg);
    if (!overrides.quiet) write_attack_table(std::cout, outcomes);
    if (overrides.out_dir) {
        std::filesystem::create_directories(*overrides.out_dir);
        const auto path = std::filesystem::path(*overrides.out_dir) / "attacks.json";
        std::ofstream f(path);
        f << attack_outcomes_json(outcomes).dump(2) << '\n';
        if (!overrides.quiet) std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic exchange simulator and order-reordering fairness harness"};
    app.require_subcommand(1);

    RunOverrides overrides;
    std::string config_path;
    std::string attacks_config;
    std::string replay_path;
    std::vector<Nanos> timers;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", [&](const std::vector<std::string>& v) {
            overrides.seed = std::stoull(v.front());
            return true;
        }, "override the scenario seed");
        cmd->add_option("--races", [&](const std::vector<std::string>& v) {
            overrides.races = std::stoull(v.front());
            return true;
        }, "override the race count");
        cmd->add_option("--out-dir", [&](const std::vector<std::string>& v) {
            overrides.out_dir = v.front();
            return true;
        }, "directory for output files");
        cmd->add_flag("--quiet", overrides.quiet, "suppress console output");
    };

    auto* run = app.add_subcommand("run", "run one scenario config");
    run->add_option("config", config_path, "scenario config (JSON)")->required();
    run->add_option("--policy", [&](const std::vector<std::string>& v) {
        overrides.policy = v.front();
        return true;
    }, "override the policy kind");
    run->add_option("--timer-ns", [&](const std::vector<std::string>& v) {
        overrides.timer_ns = std::stoll(v.front());
        return true;
    }, "override the active policy's main duration");
    add_common(run);

    auto* sweep = app.add_subcommand("sweep", "rerun a libra scenario across batch lengths");
    sweep->add_option("config", config_path, "base scenario config (JSON)")->required();
    sweep->add_option("--timer-list-ns", timers, "timer values to sweep (default 1..10 ms)");
    add_common(sweep);

    auto* attacks = app.add_subcommand("attacks", "run the manipulation battery");
    attacks->add_option("config", attacks_config, "attack battery config (JSON, optional)");
    add_common(attacks);

    auto* replay = app.add_subcommand("replay", "verify an event log against a fresh engine");
    replay->add_option("event_log", replay_path, "JSON-lines event log")->required();
    replay->add_flag("--quiet", overrides.quiet, "suppress console output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, overrides);
        if (sweep->parsed()) return cmd_sweep(config_path, overrides, timers);
        if (attacks->parsed()) return cmd_attacks(attacks_config, overrides);
        if (replay->parsed()) {
            std::ostringstream sink;
            std::ostream& diag = overrides.quiet ? static_cast<std::ostream&>(sink) : std::cout;
            return replay_event_log(replay_path, diag);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
