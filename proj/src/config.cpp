#include "medusa/config.hpp"

#include "medusa/errors.hpp"

#include <string>

namespace medusa {

const char* to_string(ConfigErrorKind kind) {
    switch (kind) {
    case ConfigErrorKind::NonPowerOfTwoWidth: return "NonPowerOfTwoWidth";
    case ConfigErrorKind::WidthMismatch: return "WidthMismatch";
    case ConfigErrorKind::TooManyPorts: return "TooManyPorts";
    case ConfigErrorKind::ZeroBurst: return "ZeroBurst";
    case ConfigErrorKind::InvalidValue: return "InvalidValue";
    case ConfigErrorKind::UnknownKey: return "UnknownKey";
    case ConfigErrorKind::Parse: return "Parse";
    }
    return "ConfigError";
}

const char* to_string(ArbiterPolicy policy) {
    switch (policy) {
    case ArbiterPolicy::RoundRobin: return "round-robin";
    }
    return "?";
}

ValidatedConfig validate_config(const InterconnectConfig& raw) {
    if (!is_power_of_two(raw.w_line)) {
        throw ConfigError(ConfigErrorKind::NonPowerOfTwoWidth,
                          "w_line=" + std::to_string(raw.w_line) + " is not a power of two");
    }
    if (!is_power_of_two(raw.w_acc)) {
        throw ConfigError(ConfigErrorKind::NonPowerOfTwoWidth,
                          "w_acc=" + std::to_string(raw.w_acc) + " is not a power of two");
    }
    if (raw.w_acc > raw.w_line) {
        throw ConfigError(ConfigErrorKind::WidthMismatch,
                          "w_acc=" + std::to_string(raw.w_acc) + " exceeds w_line=" +
                              std::to_string(raw.w_line));
    }
    // Payloads are carried in a 64-bit container.
    if (raw.w_acc > 64) {
        throw ConfigError(ConfigErrorKind::WidthMismatch,
                          "w_acc=" + std::to_string(raw.w_acc) + " exceeds the 64-bit word model");
    }
    const unsigned lanes = raw.w_line / raw.w_acc;
    if (lanes > 65535) {
        throw ConfigError(ConfigErrorKind::WidthMismatch, "lane count above 65535");
    }
    if (raw.n_read_ports_active < 1 || raw.n_read_ports_active > lanes) {
        throw ConfigError(ConfigErrorKind::TooManyPorts,
                          "n_read_ports_active=" + std::to_string(raw.n_read_ports_active) +
                              " outside [1, " + std::to_string(lanes) + "]");
    }
    if (raw.n_write_ports_active < 1 || raw.n_write_ports_active > lanes) {
        throw ConfigError(ConfigErrorKind::TooManyPorts,
                          "n_write_ports_active=" + std::to_string(raw.n_write_ports_active) +
                              " outside [1, " + std::to_string(lanes) + "]");
    }
    if (raw.max_burst_len < 1) {
        throw ConfigError(ConfigErrorKind::ZeroBurst, "max_burst_len must be at least 1");
    }
    if (raw.port_slot_count < 2) {
        throw ConfigError(ConfigErrorKind::InvalidValue, "port_slot_count must be at least 2");
    }

    ValidatedConfig out;
    out.raw_ = raw;
    out.lanes_ = lanes;
    out.log2_lanes_ = log2_exact(lanes);
    return out;
}

}  // namespace medusa
