#include "medusa/cli.hpp"
#include "medusa/config.hpp"
#include "medusa/errors.hpp"
#include "medusa/harness.hpp"
#include "medusa/resource_model.hpp"
#include "medusa/rotation.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace medusa;

namespace {

py::dict metrics_dict(const Metrics& m) {
    py::dict d;
    d["cycles"] = m.cycles;
    d["window_begin"] = m.window_begin;
    d["window_end"] = m.window_end;
    d["words_delivered"] = m.words_delivered;
    d["words_written"] = m.words_written;
    d["lines_transferred"] = m.lines_transferred;
    d["bus_util"] = m.bus_util;
    d["lines_measured"] = m.lines_measured;
    d["first_word_lat_mean"] = m.first_word_lat_mean;
    d["first_word_lat_min"] = m.first_word_lat_min;
    d["first_word_lat_max"] = m.first_word_lat_max;
    d["grants"] = m.grants;
    d["stalls"] = m.stalls;
    d["port_words"] = m.port_words;
    d["port_rate"] = m.port_rate;
    return d;
}

py::dict simulate(const ValidatedConfig& cfg, const std::string& network, const std::string& pattern) {
    const NetworkKind kind = parse_network_kind(network);
    const TrafficPattern tp{parse_pattern_kind(pattern), cfg.seed()};
    Metrics m;
    {
        py::gil_scoped_release release;
        m = run_simulation(cfg, kind, tp).metrics;
    }
    return metrics_dict(m);
}

py::tuple validate(const ValidatedConfig& cfg, const std::string& pattern) {
    EquivalenceReport report;
    {
        py::gil_scoped_release release;
        const Workload w = gen_traffic(TrafficPattern{parse_pattern_kind(pattern), cfg.seed()}, cfg);
        const OracleResult oracle = oracle_expected(w, cfg);
        report = check_equivalence(run_simulation(cfg, NetworkKind::Medusa, w),
                                   run_simulation(cfg, NetworkKind::Baseline, w), oracle);
    }
    return py::make_tuple(report.pass, report.summary());
}

py::list cost_report(const ValidatedConfig& cfg) {
    py::list out;
    for (const CostReport& r : design_cost_report(cfg)) {
        py::dict d;
        d["design"] = to_string(r.design);
        d["direction"] = r.direction == Direction::Read ? "read" : "write";
        d["n"] = r.n;
        d["mux2"] = r.mux2_count;
        d["bram18"] = r.bram18_count;
        d["notes"] = r.notes;
        out.append(d);
    }
    return out;
}

py::tuple cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"medusa-sim"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cycle-accurate wide-to-narrow memory interconnect simulator";

    auto base_error = py::register_exception<Error>(m, "MedusaError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base_error);
    py::register_exception<AmountOutOfRange>(m, "AmountOutOfRange", base_error);
    py::register_exception<InvalidGeometry>(m, "InvalidGeometry", base_error);
    py::register_exception<MalformedRequest>(m, "MalformedRequest", base_error);
    py::register_exception<BankConflict>(m, "BankConflict", base_error);
    py::register_exception<SimDeadlock>(m, "SimDeadlock", base_error);
    py::register_exception<UsageError>(m, "UsageError", base_error);

    py::class_<InterconnectConfig>(m, "Config")
        .def(py::init<>())
        .def_readwrite("w_line", &InterconnectConfig::w_line)
        .def_readwrite("w_acc", &InterconnectConfig::w_acc)
        .def_readwrite("n_read_ports_active", &InterconnectConfig::n_read_ports_active)
        .def_readwrite("n_write_ports_active", &InterconnectConfig::n_write_ports_active)
        .def_readwrite("max_burst_len", &InterconnectConfig::max_burst_len)
        .def_readwrite("dram_latency", &InterconnectConfig::dram_latency)
        .def_readwrite("port_slot_count", &InterconnectConfig::port_slot_count)
        .def_readwrite("rng_seed", &InterconnectConfig::rng_seed)
        .def_readwrite("sim_cycles", &InterconnectConfig::sim_cycles)
        .def_readwrite("provenance_tags", &InterconnectConfig::provenance_tags);

    py::class_<ValidatedConfig>(m, "ValidatedConfig")
        .def_property_readonly("lanes", &ValidatedConfig::lanes)
        .def_property_readonly("w_line", &ValidatedConfig::w_line)
        .def_property_readonly("w_acc", &ValidatedConfig::w_acc)
        .def_property_readonly("read_ports", &ValidatedConfig::read_ports)
        .def_property_readonly("write_ports", &ValidatedConfig::write_ports)
        .def_property_readonly("max_burst_len", &ValidatedConfig::max_burst_len)
        .def_property_readonly("seed", &ValidatedConfig::seed)
        .def_property_readonly("sim_cycles", &ValidatedConfig::sim_cycles)
        .def("raw", &ValidatedConfig::raw);

    m.def("validate_config", py::overload_cast<const InterconnectConfig&>(&validate_config), py::arg("config"));

    m.def(
        "rotate_left",
        [](const std::vector<std::int64_t>& v, std::size_t amount) { return rotate_left(v, amount); },
        py::arg("values"), py::arg("amount"));
    m.def(
        "stage_controls", [](unsigned lanes, unsigned amount) { return stage_controls(lanes, amount).bits; },
        py::arg("lanes"), py::arg("amount"));
    m.def(
        "rotate_via_stages",
        [](const std::vector<std::int64_t>& v, const std::vector<bool>& bits) {
            return rotate_via_stages(v, StageControls{bits});
        },
        py::arg("values"), py::arg("controls"));

    m.def("baseline_mux_cost", &baseline_mux_cost, py::arg("w_line"), py::arg("n"));
    m.def("medusa_mux_cost", &medusa_mux_cost, py::arg("w_line"), py::arg("n"));
    m.def("fifo_bram_cost", &fifo_bram_cost, py::arg("width"), py::arg("depth"));
    m.def("cost_report", &cost_report, py::arg("config"));

    m.def("simulate", &simulate, py::arg("config"), py::arg("network") = "medusa", py::arg("pattern") = "stream",
          "Run one network on a generated workload and return its metrics");
    m.def("validate", &validate, py::arg("config"), py::arg("pattern") = "random",
          "Medusa, baseline and oracle on one seeded workload; returns (passed, summary)");
    m.def("run_cli", &cli, py::arg("args"), "Run the command line in-process; returns (exit_code, stdout, stderr)");
}
