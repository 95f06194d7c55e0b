#include "medusa/cli.hpp"

#include "medusa/config_io.hpp"
#include "medusa/errors.hpp"
#include "medusa/harness.hpp"
#include "medusa/report.hpp"
#include "medusa/resource_model.hpp"
#include "medusa/traffic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace medusa {
namespace {

// Marks port counts nobody set; they default to N once N is known.
constexpr unsigned kUnsetPorts = std::numeric_limits<unsigned>::max();

struct Options {
    std::string config_path;
    std::string out_path;
    std::string network = "both";
    std::optional<std::string> pattern;
    std::string trace_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> cycles;
    std::optional<unsigned> w_line;
    std::optional<unsigned> w_acc;
    std::optional<unsigned> read_ports;
    std::optional<unsigned> write_ports;
    std::optional<unsigned> burst;
    std::vector<std::string> overrides;
    unsigned jobs = 0;
    bool json = false;
    bool grid = false;
    int verbose = 0;
};

void add_common_options(CLI::App& cmd, Options& o) {
    cmd.add_option("--config", o.config_path, "Config file (key = value lines or one JSON object)");
    cmd.add_option("--out", o.out_path, "Output CSV path (default: stdout)");
    cmd.add_option("--seed", o.seed, "RNG seed (fallback: MEDUSA_SIM_SEED)");
    cmd.add_option("--cycles", o.cycles, "Simulated cycle budget");
    cmd.add_option("--w-line", o.w_line, "DRAM interface width in bits");
    cmd.add_option("--w-acc", o.w_acc, "Accelerator port width in bits");
    cmd.add_option("--read-ports", o.read_ports, "Active read ports (default N)");
    cmd.add_option("--write-ports", o.write_ports, "Active write ports (default N)");
    cmd.add_option("--burst", o.burst, "Maximum burst length in lines");
    cmd.add_option("--set", o.overrides, "Config override key=value (repeatable)");
    cmd.add_flag("--json", o.json, "Also emit JSON (to <out>.json, or to stdout without --out)");
    cmd.add_flag("-v,--verbose", o.verbose, "Progress messages on stderr");
}

InterconnectConfig build_config(const Options& o) {
    InterconnectConfig cfg;
    cfg.n_read_ports_active = kUnsetPorts;
    cfg.n_write_ports_active = kUnsetPorts;
    if (const char* env = std::getenv("MEDUSA_SIM_SEED"); env && *env) {
        set_config_value(cfg, "rng_seed", env);
    }
    if (!o.config_path.empty()) cfg = load_config_file(o.config_path, cfg);
    for (const std::string& kv : o.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
        set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (o.seed) cfg.rng_seed = *o.seed;
    if (o.cycles) cfg.sim_cycles = *o.cycles;
    if (o.w_line) cfg.w_line = *o.w_line;
    if (o.w_acc) cfg.w_acc = *o.w_acc;
    if (o.read_ports) cfg.n_read_ports_active = *o.read_ports;
    if (o.write_ports) cfg.n_write_ports_active = *o.write_ports;
    if (o.burst) cfg.max_burst_len = *o.burst;
    if (cfg.w_acc != 0 && cfg.w_line % cfg.w_acc == 0) {
        const unsigned lanes = cfg.w_line / cfg.w_acc;
        if (cfg.n_read_ports_active == kUnsetPorts) cfg.n_read_ports_active = lanes;
        if (cfg.n_write_ports_active == kUnsetPorts) cfg.n_write_ports_active = lanes;
    }
    return cfg;
}

std::vector<NetworkKind> networks_of(const std::string& s) {
    if (s == "both") return {NetworkKind::Baseline, NetworkKind::Medusa};
    return {parse_network_kind(s)};
}

void emit(const Options& o, const std::vector<RunRecord>& records, std::ostream& out) {
    if (o.out_path.empty()) {
        if (o.json) {
            out << to_json(records).dump(2) << '\n';
        } else {
            write_metrics_csv(out, records);
        }
        return;
    }
    std::ofstream f(o.out_path);
    if (!f) throw UsageError("cannot write " + o.out_path);
    write_metrics_csv(f, records);
    if (o.json) {
        std::ofstream j(o.out_path + ".json");
        if (!j) throw UsageError("cannot write " + o.out_path + ".json");
        j << to_json(records).dump(2) << '\n';
    }
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    const ValidatedConfig cfg = validate_config(build_config(o));
    const PatternKind pattern = parse_pattern_kind(o.pattern.value_or("stream"));
    Workload workload;
    if (!o.trace_path.empty()) {
        std::ifstream in(o.trace_path);
        if (!in) throw UsageError("cannot open trace file " + o.trace_path);
        workload = read_trace(in, cfg, cfg.seed());
    } else {
        workload = gen_traffic(TrafficPattern{pattern, cfg.seed()}, cfg);
    }
    std::vector<RunRecord> records;
    for (NetworkKind kind : networks_of(o.network)) {
        if (o.verbose) err << "simulating " << to_string(kind) << "\n";
        SimResult r = run_simulation(cfg, kind, workload);
        records.push_back(RunRecord{make_config_id(cfg, pattern), cfg, pattern, kind, r.metrics, std::nullopt});
    }
    fill_deltas(records);
    emit(o, records, out);
    return kExitOk;
}

std::vector<ValidatedConfig> sweep_grid(const InterconnectConfig& base) {
    std::vector<ValidatedConfig> grid;
    for (unsigned ports = 8; ports <= 64; ports += 4) {
        InterconnectConfig c = base;
        unsigned w_line = c.w_acc;
        while (w_line < ports * c.w_acc) w_line *= 2;
        c.w_line = w_line;
        c.n_read_ports_active = ports;
        c.n_write_ports_active = ports;
        grid.push_back(validate_config(c));
    }
    return grid;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
    InterconnectConfig base = build_config(o);
    const PatternKind pattern = parse_pattern_kind(o.pattern.value_or("stream"));
    const auto grid = sweep_grid(base);
    const auto kinds = networks_of(o.network);

    struct Point {
        const ValidatedConfig* cfg;
        NetworkKind kind;
    };
    std::vector<Point> points;
    for (const auto& cfg : grid) {
        for (NetworkKind k : kinds) points.push_back({&cfg, k});
    }
    std::vector<std::optional<RunRecord>> results(points.size());
    std::vector<std::string> errors(points.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            const Point& pt = points[i];
            try {
                const Workload w = gen_traffic(TrafficPattern{pattern, pt.cfg->seed()}, *pt.cfg);
                SimResult r = run_simulation(*pt.cfg, pt.kind, w);
                results[i] = RunRecord{make_config_id(*pt.cfg, pattern), *pt.cfg, pattern, pt.kind, r.metrics,
                                       std::nullopt};
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(points.size()));
    std::vector<std::thread> threads;
    for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    std::vector<RunRecord> records;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!errors[i].empty()) throw Error("sweep point " + std::to_string(i) + ": " + errors[i]);
        records.push_back(std::move(*results[i]));
    }
    if (o.verbose) err << "swept " << points.size() << " points\n";
    fill_deltas(records);
    emit(o, records, out);
    return kExitOk;
}

int cmd_cost(const Options& o, std::ostream& out) {
    std::vector<CostReport> reports;
    if (o.grid) {
        for (const auto& cfg : sweep_grid(build_config(o))) {
            auto r = design_cost_report(cfg);
            reports.insert(reports.end(), r.begin(), r.end());
        }
    } else {
        reports = design_cost_report(validate_config(build_config(o)));
    }
    std::ostringstream csv;
    write_cost_csv(csv, reports);
    if (o.out_path.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(o.out_path);
        if (!f) throw UsageError("cannot write " + o.out_path);
        f << csv.str();
    }
    return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    const ValidatedConfig cfg = validate_config(build_config(o));
    const PatternKind pattern = parse_pattern_kind(o.pattern.value_or("random"));
    const Workload workload = gen_traffic(TrafficPattern{pattern, cfg.seed()}, cfg);
    const OracleResult oracle = oracle_expected(workload, cfg);
    if (o.verbose) err << "workload: " << workload.requests.size() << " requests\n";
    const SimResult medusa = run_simulation(cfg, NetworkKind::Medusa, workload);
    const SimResult baseline = run_simulation(cfg, NetworkKind::Baseline, workload);
    const EquivalenceReport report = check_equivalence(medusa, baseline, oracle);

    std::ostringstream text;
    text << report.summary() << '\n'
         << "config " << make_config_id(cfg, pattern) << '\n'
         << "requests " << workload.requests.size() << '\n'
         << "words_delivered " << medusa.metrics.words_delivered << '\n'
         << "lines_written " << oracle.storage.size() << '\n'
         << "stalls medusa " << medusa.metrics.stalls << " baseline " << baseline.metrics.stalls << '\n';
    if (o.out_path.empty()) {
        out << text.str();
    } else {
        std::ofstream f(o.out_path);
        if (!f) throw UsageError("cannot write " + o.out_path);
        f << text.str();
    }
    return report.pass ? kExitOk : kExitValidationFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cycle-accurate simulator and cost model for wide-to-narrow memory interconnects.\n"
                 "Settings precedence: flags > --set > config file > MEDUSA_SIM_SEED > defaults.",
                 "medusa-sim"};
    app.require_subcommand(1);
    Options o;

    auto* simulate = app.add_subcommand("simulate", "Run one configuration and write metrics CSV");
    add_common_options(*simulate, o);
    simulate->add_option("--network", o.network, "medusa, baseline or both")
        ->check(CLI::IsMember({"medusa", "baseline", "both"}));
    simulate->add_option("--pattern", o.pattern, "stream or random")->check(CLI::IsMember({"stream", "random"}));
    simulate->add_option("--trace", o.trace_path, "Workload trace file (cycle port R|W line_addr burst_len)");

    auto* sweep = app.add_subcommand("sweep", "Port-count scaling grid, 8 to 64 ports in steps of 4");
    add_common_options(*sweep, o);
    sweep->add_option("--network", o.network, "medusa, baseline or both")
        ->check(CLI::IsMember({"medusa", "baseline", "both"}));
    sweep->add_option("--pattern", o.pattern, "stream or random")->check(CLI::IsMember({"stream", "random"}));
    sweep->add_option("--jobs", o.jobs, "Worker threads (default: hardware concurrency)");

    auto* cost = app.add_subcommand("cost", "Mux and BRAM cost report");
    add_common_options(*cost, o);
    cost->add_flag("--grid", o.grid, "Report every point of the sweep grid");

    auto* validate = app.add_subcommand("validate", "Medusa vs baseline vs oracle on a seeded workload");
    add_common_options(*validate, o);
    validate->add_option("--pattern", o.pattern, "stream or random")->check(CLI::IsMember({"stream", "random"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(o, out, err);
        if (sweep->parsed()) return cmd_sweep(o, out, err);
        if (cost->parsed()) return cmd_cost(o, out);
        return cmd_validate(o, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const MalformedRequest& e) {
        err << "bad workload: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "simulation error: " << e.what() << '\n';
        return kExitValidationFailed;
    }
}

}  // namespace medusa
