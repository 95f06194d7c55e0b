#pragma once

#include <cstdint>
#include <string>

namespace medusa {

enum class ArbiterPolicy { RoundRobin };

/// Raw interconnect geometry and simulation parameters, as read from a config
/// file or command line. Not yet checked; see validate_config().
struct InterconnectConfig {
    unsigned w_line = 512;              // DRAM interface width, bits
    unsigned w_acc = 16;                // narrow port width, bits
    unsigned n_read_ports_active = 32;
    unsigned n_write_ports_active = 32;
    unsigned max_burst_len = 32;        // lines per request
    unsigned dram_latency = 20;         // cycles from grant to first line
    unsigned port_slot_count = 2;       // line slots per port-side buffer
    ArbiterPolicy arbiter_policy = ArbiterPolicy::RoundRobin;
    std::uint64_t rng_seed = 1;
    std::uint64_t sim_cycles = 20000;
    bool provenance_tags = true;

    friend bool operator==(const InterconnectConfig&, const InterconnectConfig&) = default;
};

/// A config that passed validation, plus derived lane geometry. Immutable;
/// safe to share between concurrently running simulations.
class ValidatedConfig {
public:
    const InterconnectConfig& raw() const noexcept { return raw_; }

    unsigned lanes() const noexcept { return lanes_; }        // N = w_line / w_acc
    unsigned lane_bits() const noexcept { return log2_lanes_; }  // log2(N)

    unsigned w_line() const noexcept { return raw_.w_line; }
    unsigned w_acc() const noexcept { return raw_.w_acc; }
    unsigned read_ports() const noexcept { return raw_.n_read_ports_active; }
    unsigned write_ports() const noexcept { return raw_.n_write_ports_active; }
    unsigned max_burst_len() const noexcept { return raw_.max_burst_len; }
    unsigned dram_latency() const noexcept { return raw_.dram_latency; }
    unsigned port_slot_count() const noexcept { return raw_.port_slot_count; }
    std::uint64_t seed() const noexcept { return raw_.rng_seed; }
    std::uint64_t sim_cycles() const noexcept { return raw_.sim_cycles; }
    bool tagged() const noexcept { return raw_.provenance_tags; }

    friend bool operator==(const ValidatedConfig&, const ValidatedConfig&) = default;

private:
    friend ValidatedConfig validate_config(const InterconnectConfig& raw);

    InterconnectConfig raw_;
    unsigned lanes_ = 0;
    unsigned log2_lanes_ = 0;
};

/// Checks geometry invariants and derives N. Active port counts below N are
/// accepted; the unused lanes stay idle. Throws ConfigError.
ValidatedConfig validate_config(const InterconnectConfig& raw);

inline ValidatedConfig validate_config(const ValidatedConfig& cfg) {
    return validate_config(cfg.raw());
}

constexpr bool is_power_of_two(std::uint64_t v) noexcept {
    return v != 0 && (v & (v - 1)) == 0;
}

constexpr unsigned log2_exact(std::uint64_t v) noexcept {
    unsigned r = 0;
    while (v > 1) {
        v >>= 1;
        ++r;
    }
    return r;
}

const char* to_string(ArbiterPolicy policy);

}  // namespace medusa
