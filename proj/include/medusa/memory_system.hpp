#pragma once

// Shared request arbiter, fixed-latency DRAM stub, and the functional oracle.

#include "medusa/config.hpp"
#include "medusa/interconnect.hpp"
#include "medusa/word.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

namespace medusa {

enum class Direction { Read, Write };

const char* to_string(Direction d);

struct MemoryRequest {
    unsigned port = 0;
    Direction dir = Direction::Read;
    std::uint64_t line_addr = 0;
    unsigned burst_len = 1;

    friend bool operator==(const MemoryRequest&, const MemoryRequest&) = default;
};

struct Grant {
    MemoryRequest req;
    Cycle granted_at = 0;
    Cycle first_line_at = 0;  // cycle the first line crosses the bus
};

/// Written lines only; unwritten addresses hold initial_line_content().
using Storage = std::map<std::uint64_t, Line>;

/// Deterministic power-on content of a DRAM line: untagged words whose values
/// are a hash of (seed, address, word index), masked to w_acc bits.
Line initial_line_content(std::uint64_t seed, std::uint64_t line_addr, unsigned lanes, unsigned w_acc);

inline constexpr unsigned kRequestQueueDepth = 4;

class DramStub;

/// Round-robin arbiter over 2N request queues: read ports 0..N-1 occupy slots
/// 0..N-1 and write ports occupy N..2N-1.
class Arbiter {
public:
    explicit Arbiter(const ValidatedConfig& cfg);

    /// False when the port's queue is full. Throws MalformedRequest when the
    /// burst length or port is out of range.
    bool submit_request(const MemoryRequest& r);

    /// One arbitration round. A grant reserves buffer space (reads) or
    /// assembled lines (writes) in `net` and occupies the DRAM channel.
    std::optional<Grant> arbiter_step(Cycle cycle, Interconnect& net, DramStub& dram);

    bool idle() const;
    std::size_t queued(unsigned port, Direction dir) const;
    unsigned rr_pointer() const noexcept { return next_; }
    /// Grants issued so far per queue slot (reads then writes).
    const std::vector<std::uint64_t>& grant_counts() const noexcept { return grants_; }

private:
    std::size_t slot_of(unsigned port, Direction dir) const {
        return dir == Direction::Read ? port : lanes_ + port;
    }

    unsigned lanes_;
    unsigned max_burst_;
    unsigned read_ports_;
    unsigned write_ports_;
    std::vector<std::deque<MemoryRequest>> queues_;
    std::vector<std::uint64_t> grants_;
    unsigned next_ = 0;
};

/// A line movement across the DRAM bus, as recorded for replay.
struct Emission {
    Cycle cycle = 0;
    unsigned port = 0;
    std::uint64_t line_addr = 0;

    friend bool operator==(const Emission&, const Emission&) = default;
};

/// Single-channel DRAM controller stub. A grant at t whose burst is the next
/// on the bus streams its first line at max(t + latency, end of the previous
/// burst), then one line per cycle.
class DramStub {
public:
    explicit DramStub(const ValidatedConfig& cfg);

    unsigned latency() const noexcept { return latency_; }

    /// True when a grant now would start exactly `latency` cycles later
    /// without waiting for the bus.
    bool can_grant(Cycle cycle) const noexcept { return cycle + latency_ >= bus_free_at_; }
    Grant start_burst(const MemoryRequest& r, Cycle cycle);

    /// Streams the line due this cycle, if any. Returns true when a line
    /// crossed the bus.
    bool dram_step(Cycle cycle, Interconnect& net);

    /// Replay mode: emit exactly these read lines at their recorded cycles,
    /// ignoring grants.
    void load_replay(std::vector<Emission> schedule);
    bool replaying() const noexcept { return replay_mode_; }

    bool idle() const noexcept;
    /// A line is scheduled on the bus, but not until after `cycle`.
    bool awaiting_line(Cycle cycle) const noexcept;
    Line read_line(std::uint64_t line_addr) const;
    void write_line(std::uint64_t line_addr, Line line) { storage_[line_addr] = std::move(line); }

    const Storage& storage() const noexcept { return storage_; }
    std::uint64_t lines_transferred() const noexcept { return lines_; }
    /// Bus cycles lost to interconnect back-pressure. Must stay zero.
    std::uint64_t stalls() const noexcept { return stalls_; }
    const std::vector<Emission>& read_emissions() const noexcept { return emissions_; }
    /// Cycles at which any line crossed the bus, in order.
    const std::vector<Cycle>& bus_cycles() const noexcept { return bus_cycles_; }

private:
    struct Active {
        Grant grant;
        unsigned next = 0;
    };

    void emit_read(unsigned port, std::uint64_t line_addr, Cycle cycle, Interconnect& net);

    unsigned lanes_;
    unsigned w_acc_;
    unsigned latency_;
    std::uint64_t seed_;
    bool tagged_;

    Storage storage_;
    std::deque<Active> bursts_;
    Cycle bus_free_at_ = 0;

    bool replay_mode_ = false;
    std::vector<Emission> replay_;
    std::size_t replay_next_ = 0;

    std::uint64_t lines_ = 0;
    std::uint64_t stalls_ = 0;
    std::vector<Emission> emissions_;
    std::vector<Cycle> bus_cycles_;
};

struct TimedRequest {
    Cycle issue = 0;
    MemoryRequest req;

    friend bool operator==(const TimedRequest&, const TimedRequest&) = default;
};

/// A request schedule plus, per write port, the words the port will push in
/// order. Each write request consumes burst_len * N words of its port's
/// stream.
struct Workload {
    std::vector<TimedRequest> requests;  // sorted by issue cycle
    std::vector<std::vector<Word>> write_data;

    friend bool operator==(const Workload&, const Workload&) = default;
};

struct OracleResult {
    std::vector<std::vector<Word>> delivered;  // per read port
    Storage storage;
};

/// Functional evaluation of the workload in request order, without timing.
OracleResult oracle_expected(const Workload& workload, const ValidatedConfig& cfg);

}  // namespace medusa
