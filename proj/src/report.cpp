#include "medusa/report.hpp"

#include "medusa/config_io.hpp"

#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace medusa {
namespace {

std::string fixed6(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

}  // namespace

std::string make_config_id(const ValidatedConfig& cfg, PatternKind pattern) {
    std::ostringstream os;
    os << "l" << cfg.w_line() << "_a" << cfg.w_acc() << "_r" << cfg.read_ports() << "_w" << cfg.write_ports()
       << "_b" << cfg.max_burst_len() << "_" << to_string(pattern) << "_s" << cfg.seed();
    return os.str();
}

void fill_deltas(std::vector<RunRecord>& records) {
    std::map<std::string, double> baseline_mean;
    for (const RunRecord& r : records) {
        if (r.network == NetworkKind::Baseline) baseline_mean[r.config_id] = r.metrics.first_word_lat_mean;
    }
    for (RunRecord& r : records) {
        auto it = baseline_mean.find(r.config_id);
        if (it == baseline_mean.end()) continue;
        r.delta_vs_baseline = r.network == NetworkKind::Baseline ? 0.0 : r.metrics.first_word_lat_mean - it->second;
    }
}

void write_metrics_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << kMetricsCsvHeader << '\n';
    for (const RunRecord& r : records) {
        const Metrics& m = r.metrics;
        out << r.config_id << ',' << to_string(r.network) << ',' << r.cfg.read_ports() << ',' << r.cfg.w_line()
            << ',' << r.cfg.w_acc() << ',' << r.cfg.max_burst_len() << ',' << m.cycles << ','
            << m.words_delivered << ',' << fixed6(m.bus_util) << ',' << fixed6(m.first_word_lat_mean) << ','
            << m.first_word_lat_min << ',' << m.first_word_lat_max << ','
            << (r.delta_vs_baseline ? fixed6(*r.delta_vs_baseline) : std::string()) << '\n';
    }
}

nlohmann::json to_json(const RunRecord& r) {
    const Metrics& m = r.metrics;
    nlohmann::json ports = nlohmann::json::array();
    for (unsigned p = 0; p < r.cfg.read_ports(); ++p) {
        ports.push_back({{"port", p}, {"words", m.port_words.at(p)}, {"rate", m.port_rate.at(p)}});
    }
    nlohmann::json cfg;
    std::istringstream lines(format_config(r.cfg.raw()));
    for (std::string line; std::getline(lines, line);) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 3);
    }
    nlohmann::json j = {
        {"config_id", r.config_id},
        {"network", to_string(r.network)},
        {"pattern", to_string(r.pattern)},
        {"config", cfg},
        {"cycles", m.cycles},
        {"window", {m.window_begin, m.window_end}},
        {"words_delivered", m.words_delivered},
        {"words_written", m.words_written},
        {"lines_transferred", m.lines_transferred},
        {"bus_util", m.bus_util},
        {"first_word_lat", {{"mean", m.first_word_lat_mean}, {"min", m.first_word_lat_min},
                            {"max", m.first_word_lat_max}, {"lines", m.lines_measured}}},
        {"grants", m.grants},
        {"stalls", m.stalls},
        {"ports", ports},
    };
    j["delta_vs_baseline"] = r.delta_vs_baseline ? nlohmann::json(*r.delta_vs_baseline) : nlohmann::json();
    return j;
}

nlohmann::json to_json(const std::vector<RunRecord>& records) {
    nlohmann::json runs = nlohmann::json::array();
    for (const RunRecord& r : records) runs.push_back(to_json(r));
    return {{"runs", runs}};
}

}  // namespace medusa
