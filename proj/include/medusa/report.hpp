#pragma once

// Metrics CSV and JSON output.

#include "medusa/config.hpp"
#include "medusa/harness.hpp"
#include "medusa/traffic.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace medusa {

struct RunRecord {
    std::string config_id;
    ValidatedConfig cfg;
    PatternKind pattern = PatternKind::Stream;
    NetworkKind network = NetworkKind::Medusa;
    Metrics metrics;
    std::optional<double> delta_vs_baseline;  // mean first-word latency difference
};

std::string make_config_id(const ValidatedConfig& cfg, PatternKind pattern);

/// Sets delta_vs_baseline on every record whose config_id also has a baseline
/// record: the Medusa row gets the mean latency difference, the baseline row 0.
void fill_deltas(std::vector<RunRecord>& records);

inline constexpr const char* kMetricsCsvHeader =
    "config_id,network,n_ports,w_line,w_acc,burst,cycles,words_delivered,bus_util,"
    "first_word_lat_mean,first_word_lat_min,first_word_lat_max,delta_vs_baseline";

void write_metrics_csv(std::ostream& out, const std::vector<RunRecord>& records);

nlohmann::json to_json(const RunRecord& record);
nlohmann::json to_json(const std::vector<RunRecord>& records);

}  // namespace medusa
