#include "medusa/config_io.hpp"

#include "medusa/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace medusa {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view value) {
    value = trim(value);
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ConfigError(ConfigErrorKind::InvalidValue,
                          std::string(key) + " expects a non-negative integer, got '" +
                              std::string(value) + "'");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    value = trim(value);
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError(ConfigErrorKind::InvalidValue,
                      std::string(key) + " expects a boolean, got '" + std::string(value) + "'");
}

ArbiterPolicy parse_policy(std::string_view value) {
    value = trim(value);
    if (value == "round-robin" || value == "round_robin" || value == "rr") {
        return ArbiterPolicy::RoundRobin;
    }
    throw ConfigError(ConfigErrorKind::InvalidValue,
                      "arbiter_policy must be round-robin, got '" + std::string(value) + "'");
}

std::string unquote(std::string_view v) {
    v = trim(v);
    if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
        v = v.substr(1, v.size() - 2);
    }
    return std::string(v);
}

InterconnectConfig parse_json(std::string_view text, InterconnectConfig cfg) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(ConfigErrorKind::Parse, e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError(ConfigErrorKind::Parse, "config JSON must be a single object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (value.is_string()) {
            set_config_value(cfg, key, value.get<std::string>());
        } else if (value.is_boolean()) {
            set_config_value(cfg, key, value.get<bool>() ? "true" : "false");
        } else if (value.is_number_unsigned()) {
            set_config_value(cfg, key, std::to_string(value.get<std::uint64_t>()));
        } else {
            throw ConfigError(ConfigErrorKind::InvalidValue,
                              key + " has unsupported JSON type " + value.type_name());
        }
    }
    return cfg;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "w_line",        "w_acc",           "n_read_ports_active", "n_write_ports_active",
        "max_burst_len", "dram_latency",    "port_slot_count",     "arbiter_policy",
        "rng_seed",      "sim_cycles",      "provenance_tags",
    };
    return keys;
}

void set_config_value(InterconnectConfig& cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    if (key == "w_line") cfg.w_line = parse_unsigned<unsigned>(key, value);
    else if (key == "w_acc") cfg.w_acc = parse_unsigned<unsigned>(key, value);
    else if (key == "n_read_ports_active") cfg.n_read_ports_active = parse_unsigned<unsigned>(key, value);
    else if (key == "n_write_ports_active") cfg.n_write_ports_active = parse_unsigned<unsigned>(key, value);
    else if (key == "max_burst_len") cfg.max_burst_len = parse_unsigned<unsigned>(key, value);
    else if (key == "dram_latency") cfg.dram_latency = parse_unsigned<unsigned>(key, value);
    else if (key == "port_slot_count") cfg.port_slot_count = parse_unsigned<unsigned>(key, value);
    else if (key == "arbiter_policy") cfg.arbiter_policy = parse_policy(value);
    else if (key == "rng_seed") cfg.rng_seed = parse_unsigned<std::uint64_t>(key, value);
    else if (key == "sim_cycles") cfg.sim_cycles = parse_unsigned<std::uint64_t>(key, value);
    else if (key == "provenance_tags") cfg.provenance_tags = parse_bool(key, value);
    else throw ConfigError(ConfigErrorKind::UnknownKey, "unknown config key '" + std::string(key) + "'");
}

InterconnectConfig parse_config(std::string_view text, InterconnectConfig base) {
    auto body = trim(text);
    if (!body.empty() && body.front() == '{') {
        return parse_json(body, base);
    }

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(ConfigErrorKind::Parse,
                              "line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        set_config_value(base, line.substr(0, eq), unquote(line.substr(eq + 1)));
    }
    return base;
}

InterconnectConfig load_config_file(const std::filesystem::path& path, InterconnectConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(ConfigErrorKind::Parse, "cannot open config file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), base);
}

std::string format_config(const InterconnectConfig& cfg) {
    std::ostringstream out;
    out << "w_line = " << cfg.w_line << '\n'
        << "w_acc = " << cfg.w_acc << '\n'
        << "n_read_ports_active = " << cfg.n_read_ports_active << '\n'
        << "n_write_ports_active = " << cfg.n_write_ports_active << '\n'
        << "max_burst_len = " << cfg.max_burst_len << '\n'
        << "dram_latency = " << cfg.dram_latency << '\n'
        << "port_slot_count = " << cfg.port_slot_count << '\n'
        << "arbiter_policy = " << to_string(cfg.arbiter_policy) << '\n'
        << "rng_seed = " << cfg.rng_seed << '\n'
        << "sim_cycles = " << cfg.sim_cycles << '\n'
        << "provenance_tags = " << (cfg.provenance_tags ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace medusa
