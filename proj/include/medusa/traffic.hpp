#pragma once

// Workload generation and the request trace file format.

#include "medusa/config.hpp"
#include "medusa/memory_system.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace medusa {

enum class PatternKind { Stream, Random };

const char* to_string(PatternKind kind);
PatternKind parse_pattern_kind(const std::string& s);

struct TrafficPattern {
    PatternKind kind = PatternKind::Stream;
    std::uint64_t seed = 1;
};

/// Line-address regions. Reads of the random pattern draw from a region no
/// write ever touches; every write goes to a fresh address. Generated
/// workloads therefore have no read/write hazards.
inline constexpr std::uint64_t kReadRegionLines = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kWriteRegionBase = std::uint64_t{1} << 40;

/// Deterministic in (pattern, cfg).
///
/// Stream: every active read port issues max-length read bursts over
/// consecutive addresses, all queued at cycle 0, enough to keep the port busy
/// past sim_cycles.
///
/// Random: (direction, port) uniform over active ports, burst length uniform
/// in [1, max_burst_len], issue gaps sized for an offered load of
/// min(0.8, 0.75 * active ports / N) lines per cycle, until sim_cycles.
Workload gen_traffic(const TrafficPattern& pattern, const ValidatedConfig& cfg);

/// Per-port write word streams sized for the write requests in `requests`.
std::vector<std::vector<Word>> gen_write_data(const std::vector<TimedRequest>& requests,
                                              const ValidatedConfig& cfg, std::uint64_t seed);

/// `cycle port R|W line_addr burst_len`, one request per line.
void write_trace(std::ostream& out, const Workload& workload);
/// Reads a trace; blank lines and `#` comments are skipped. Write data is
/// generated from `seed`. Throws MalformedRequest on a bad line.
Workload read_trace(std::istream& in, const ValidatedConfig& cfg, std::uint64_t seed);

}  // namespace medusa
