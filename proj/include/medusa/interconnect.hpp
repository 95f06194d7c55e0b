#pragma once

// Common surface of the two data-transfer networks, as seen by the DRAM stub,
// the arbiter, and the accelerator-side traffic.
//
// Reference timing (cycles), shared by both networks:
//   buffer enqueue -> earliest dequeue ........ kFifoLatency
//   buffer -> converter / bank read handoff ... kHandoffLatency
//   port output register ...................... kOutputRegister
// An idle baseline port presents word 0 of a line kFifoLatency +
// kHandoffLatency + kOutputRegister cycles after the line leaves DRAM. The
// Medusa port spends exactly N more cycles in transposition.

#include "medusa/word.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace medusa {

using Cycle = std::uint64_t;

inline constexpr Cycle kNever = std::numeric_limits<Cycle>::max();

namespace timing {
inline constexpr Cycle kFifoLatency = 1;
inline constexpr Cycle kHandoffLatency = 1;
inline constexpr Cycle kOutputRegister = 1;
}  // namespace timing

enum class NetworkKind { Medusa, Baseline };

const char* to_string(NetworkKind kind);
NetworkKind parse_network_kind(const std::string& s);

/// Per-line timestamps on the read path, indexed by the line's arrival order
/// at its port.
struct ReadLineTiming {
    Cycle arrival = kNever;     // cycle the line left the DRAM stub
    Cycle join = kNever;        // first transposition cycle (Medusa only)
    Cycle transposed = kNever;  // cycle its last word was transposed (Medusa only)
    Cycle first_word = kNever;  // cycle word 0 is poppable at the port
    Cycle last_word = kNever;   // cycle word N-1 is poppable at the port
};

class Interconnect {
public:
    virtual ~Interconnect() = default;

    virtual NetworkKind kind() const noexcept = 0;

    // Read path: DRAM -> network -> narrow read ports.
    virtual bool accept_read_line(unsigned port, Line line, Cycle cycle) = 0;
    /// True when a burst of `lines` whose first line lands at `first_landing`
    /// (one line per cycle after that) can be absorbed without back-pressure,
    /// counting space already reserved by earlier grants.
    virtual bool can_land_read_burst(unsigned port, unsigned lines, Cycle first_landing) const = 0;
    virtual void reserve_read(unsigned port, unsigned lines) = 0;
    virtual std::optional<Word> pop_read_word(unsigned port, Cycle cycle) = 0;

    // Write path: narrow write ports -> network -> DRAM.
    virtual bool push_write_word(unsigned port, const Word& w, Cycle cycle) = 0;
    /// Assembled lines poppable at `cycle` that no grant has claimed yet.
    virtual unsigned write_lines_ready(unsigned port, Cycle cycle) const = 0;
    virtual void reserve_write(unsigned port, unsigned lines) = 0;
    virtual std::optional<Line> pop_write_line(unsigned port, Cycle cycle) = 0;

    /// Advances all internal registers by one cycle. Called once per cycle,
    /// after the DRAM stub and before the ports pop/push.
    virtual void step(Cycle cycle) = 0;

    /// No data held anywhere in the network.
    virtual bool empty() const = 0;

    virtual const std::vector<ReadLineTiming>& read_timing(unsigned port) const = 0;
};

}  // namespace medusa
