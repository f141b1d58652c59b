#include "fairmatch/harness/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace fairmatch::harness {

namespace {

template <class T, class F>
std::string join(const std::vector<T>& items, F&& render) {
    std::ostringstream out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out << ';';
        out << render(items[i]);
    }
    return out.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(s);
    while (std::getline(in, token, sep)) out.push_back(token);
    return out;
}

}  // namespace

void write_races_csv(std::ostream& out, std::span<const sim::RaceRecord> races,
                     const std::string& policy_name) {
    out << "stimulus_ns,instrument,policy,firms,arrivals_ns,winner,multi_participant\n";
    for (const auto& r : races) {
        out << r.stimulus_at.ns << ',' << r.instrument << ',' << policy_name << ','
            << join(r.competitors, [](const sim::RaceCompetitor& c) { return c.firm; }) << ','
            << join(r.competitors, [](const sim::RaceCompetitor& c) { return c.arrived_at.ns; })
            << ',';
        if (r.winner) out << *r.winner;
        out << ',' << (r.multi_participant ? 1 : 0) << '\n';
    }
}

std::vector<CsvRace> read_races_csv(std::istream& in) {
    std::vector<CsvRace> out;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() < 7) continue;
        CsvRace row;
        row.stimulus_ns = std::stoll(cols[0]);
        row.instrument = std::stoll(cols[1]);
        row.policy = cols[2];
        for (const auto& f : split(cols[3], ';')) row.firms.push_back(std::stoi(f));
        for (const auto& a : split(cols[4], ';')) row.arrivals_ns.push_back(std::stoll(a));
        if (!cols[5].empty()) row.winner = std::stoi(cols[5]);
        row.multi_participant = cols[6] == "1";
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<sim::RaceRecord> races_from_csv(const std::vector<CsvRace>& rows) {
    std::vector<sim::RaceRecord> out;
    out.reserve(rows.size());
    std::uint64_t id = 0;
    for (const auto& row : rows) {
        sim::RaceRecord r;
        r.race_id = id++;
        r.stimulus_at = Timestamp{row.stimulus_ns};
        r.instrument = row.instrument;
        for (std::size_t i = 0; i < row.firms.size(); ++i)
            r.competitors.push_back(sim::RaceCompetitor{
                row.firms[i], 0,
                Timestamp{i < row.arrivals_ns.size() ? row.arrivals_ns[i] : 0}});
        r.winner = row.winner;
        r.multi_participant = row.multi_participant;
        out.push_back(std::move(r));
    }
    return out;
}

void write_summary_text(std::ostream& out, const sim::ScenarioConfig& cfg,
                        const sim::SimResult& result, const FairnessReport& report) {
    out << "scenario: " << cfg.name << "\n"
        << "policy:   " << result.policy_name << "\n"
        << "seed:     " << cfg.seed << "\n"
        << "races:    " << report.races << " (multi-participant: "
        << report.multi_participant_races << ")\n";
    const auto& c = result.counts;
    out << "orders:   " << c.orders << " forwarded-fills: " << c.fills
        << " drops: " << c.drops << " cancels: " << c.cancels << " drains: " << c.drains << "\n";
    if (c.cancels > 0)
        out << "sniping:  cancel-overtakes: " << c.cancel_overtakes
            << " matches-prevented: " << c.matches_prevented << "\n";
    if (c.placeholding_checks > 0)
        out << "placeholding: " << c.placeholding_passed << "/" << c.placeholding_checks
            << " drains kept the honest order ahead\n";

    out << "\nfirm  expected_latency_ns  races  wins  win_rate\n";
    for (const auto& f : report.firms) {
        out << std::left << std::setw(6) << f.firm << std::setw(21) << f.expected_latency_ns
            << std::setw(7) << f.races << std::setw(6) << f.wins << std::fixed
            << std::setprecision(4) << f.win_rate << "\n";
    }

    out << "\nslower-beats-faster (bound 0.5, tolerance " << std::setprecision(3)
        << report.tolerance << ")\n";
    out << "slower  faster  races   freq    ci95            verdict\n";
    for (const auto& p : report.pairs) {
        out << std::left << std::setw(8) << p.slower << std::setw(8) << p.faster << std::setw(8)
            << p.races << std::fixed << std::setprecision(4) << std::setw(8) << p.frequency
            << "[" << p.ci_lo << ", " << p.ci_hi << "]  "
            << (p.pass ? "pass" : "FAIL") << " (tol " << std::setprecision(3) << p.tolerance
            << ")\n";
    }
}

nlohmann::json summary_json(const sim::ScenarioConfig& cfg, const sim::SimResult& result,
                            const FairnessReport& report) {
    nlohmann::json firms = nlohmann::json::array();
    for (const auto& f : report.firms)
        firms.push_back({{"firm", f.firm},
                         {"expected_latency_ns", f.expected_latency_ns},
                         {"races", f.races},
                         {"wins", f.wins},
                         {"win_rate", f.win_rate}});
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : report.pairs)
        pairs.push_back({{"slower", p.slower},
                         {"faster", p.faster},
                         {"races", p.races},
                         {"slower_wins", p.slower_wins},
                         {"frequency", p.frequency},
                         {"ci95", {p.ci_lo, p.ci_hi}},
                         {"bound", p.bound},
                         {"tolerance", p.tolerance},
                         {"pass", p.pass}});
    const auto& c = result.counts;
    return nlohmann::json{
        {"name", cfg.name},
        {"policy", result.policy_name},
        {"seed", cfg.seed},
        {"races", report.races},
        {"multi_participant_races", report.multi_participant_races},
        {"counts",
         {{"orders", c.orders},
          {"fills", c.fills},
          {"drops", c.drops},
          {"cancels", c.cancels},
          {"drains", c.drains},
          {"cancel_overtakes", c.cancel_overtakes},
          {"matches_prevented", c.matches_prevented},
          {"contested_timer_started_by_placeholder", c.contested_timer_started_by_placeholder},
          {"placeholding_checks", c.placeholding_checks},
          {"placeholding_passed", c.placeholding_passed}}},
        {"firms", firms},
        {"pairs", pairs},
    };
}

}  // namespace fairmatch::harness
