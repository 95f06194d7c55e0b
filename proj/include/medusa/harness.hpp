#pragma once

// Cycle-stepped simulation of traffic + arbiter + DRAM stub + one network.
//
// Order within cycle t:
//   1. traffic: requests with issue <= t enter their port queues
//   2. arbiter_step(t)
//   3. dram_step(t): at most one line crosses the bus
//   4. network step(t)
//   5. ports: every read port pops one word, every write port pushes one
//
// The run continues past sim_cycles until the workload has fully drained.
// Utilization and per-port rates are measured over [warm-up, sim_cycles).

#include "medusa/config.hpp"
#include "medusa/interconnect.hpp"
#include "medusa/medusa_network.hpp"
#include "medusa/memory_system.hpp"
#include "medusa/traffic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace medusa {

struct SimOptions {
    /// Keep the Medusa transposition event log.
    bool record_events = false;
    /// Replace the arbiter with this exact read emission schedule. The
    /// workload must then contain reads only.
    const std::vector<Emission>* replay = nullptr;
};

struct Metrics {
    Cycle cycles = 0;         // cycles simulated until quiescence
    Cycle window_begin = 0;   // end of warm-up
    Cycle window_end = 0;     // sim_cycles
    std::uint64_t words_delivered = 0;  // read words popped by all ports
    std::uint64_t words_written = 0;    // write words accepted from all ports
    std::uint64_t lines_transferred = 0;
    std::uint64_t window_lines = 0;
    double bus_util = 0.0;
    std::uint64_t lines_measured = 0;
    double first_word_lat_mean = 0.0;
    Cycle first_word_lat_min = 0;
    Cycle first_word_lat_max = 0;
    std::uint64_t grants = 0;
    std::uint64_t stalls = 0;
    std::vector<std::uint64_t> port_words;  // per read port
    std::vector<double> port_rate;          // words/cycle in the window, per read port
};

Cycle warmup_cycles(const ValidatedConfig& cfg);

struct SimResult {
    NetworkKind network = NetworkKind::Medusa;
    Metrics metrics;
    std::vector<std::vector<Word>> delivered;  // per read port, in pop order
    Storage storage;                           // lines written during the run
    std::vector<Emission> emissions;           // read lines as they crossed the bus
    std::vector<std::vector<ReadLineTiming>> read_timing;
    std::vector<TransposeEvent> read_events;
    std::vector<TransposeEvent> write_events;
};

SimResult run_simulation(const ValidatedConfig& cfg, NetworkKind kind, const Workload& workload,
                         const SimOptions& options = {});

inline SimResult run_simulation(const ValidatedConfig& cfg, NetworkKind kind, const TrafficPattern& pattern) {
    return run_simulation(cfg, kind, gen_traffic(pattern, cfg));
}

struct Divergence {
    std::string source;    // which run, or "storage"
    unsigned port = 0;
    std::uint64_t position = 0;  // word position, or line address for storage
    std::string detail;
};

struct EquivalenceReport {
    bool pass = true;
    std::optional<Divergence> first;

    std::string summary() const;
};

/// Compares one run against the oracle.
EquivalenceReport compare_to_oracle(const SimResult& run, const OracleResult& oracle, const std::string& name);

/// Both runs against the oracle; reports the first divergence found.
EquivalenceReport check_equivalence(const SimResult& a, const SimResult& b, const OracleResult& oracle);

}  // namespace medusa
