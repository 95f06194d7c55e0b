#pragma once

// Cycle-accurate model of the transposition-based read and write networks.
//
// Read path: each DRAM line is stored across the N banks of the DRAM-side
// buffer (word y in bank y) at a row of its port's circular region. On cycle
// c, every port whose head line is in flight reads bank (p + c) mod N; the
// gathered lanes are rotated left by c mod N, and lane p lands at position
// (p + c) mod N of that port's filling slot. After N cycles the slot holds the
// whole line and the port drains it in index order.
//
// Write path mirrors it: port p's completed slot supplies word (p + c) mod N,
// the lanes are rotated right by c mod N, and lane q is written to DRAM-side
// bank q at port (q - c) mod N's tail row.

#include "medusa/config.hpp"
#include "medusa/interconnect.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace medusa {

/// One bank access recorded by the debug event log.
struct TransposeMove {
    unsigned port;
    unsigned word_index;   // index of the word within its line
    unsigned input_bank;   // bank read on the source side
    unsigned output_bank;  // bank written on the destination side
    unsigned output_addr;  // address written within output_bank
};

struct TransposeEvent {
    Cycle cycle;
    unsigned rotation;  // left-rotation amount applied by the rotation unit
    std::vector<TransposeMove> moves;
};

/// Per-port head/tail bookkeeping for one direction's DRAM-side region.
struct PortProgress {
    unsigned head_row = 0;
    unsigned tail_row = 0;
    unsigned words_done = 0;
    Cycle join_cycle = kNever;
};

class MedusaNetwork final : public Interconnect {
public:
    explicit MedusaNetwork(const ValidatedConfig& cfg);

    NetworkKind kind() const noexcept override { return NetworkKind::Medusa; }

    // Read path.
    bool read_accept_line(unsigned port, Line line, Cycle cycle);
    /// Places a line straight into the port's DRAM-side region, bypassing the
    /// landing register, as if it had arrived long before. Test scaffolding
    /// for reproducing hand-traced schedules from a pre-filled buffer.
    void preload_read_line(unsigned port, Line line);
    unsigned read_transpose_step(Cycle cycle);
    std::optional<Word> read_port_pop(unsigned port, Cycle cycle);

    // Write path.
    bool write_port_push(unsigned port, const Word& w, Cycle cycle);
    unsigned write_transpose_step(Cycle cycle);
    std::optional<Line> write_line_pop(unsigned port, Cycle cycle);

    // Interconnect.
    bool accept_read_line(unsigned port, Line line, Cycle cycle) override {
        return read_accept_line(port, std::move(line), cycle);
    }
    bool can_land_read_burst(unsigned port, unsigned lines, Cycle first_landing) const override;
    void reserve_read(unsigned port, unsigned lines) override;
    std::optional<Word> pop_read_word(unsigned port, Cycle cycle) override {
        return read_port_pop(port, cycle);
    }
    bool push_write_word(unsigned port, const Word& w, Cycle cycle) override {
        return write_port_push(port, w, cycle);
    }
    unsigned write_lines_ready(unsigned port, Cycle cycle) const override;
    void reserve_write(unsigned port, unsigned lines) override;
    std::optional<Line> pop_write_line(unsigned port, Cycle cycle) override {
        return write_line_pop(port, cycle);
    }
    void step(Cycle cycle) override;
    bool empty() const override;
    const std::vector<ReadLineTiming>& read_timing(unsigned port) const override {
        return read_[port].timing;
    }

    // Inspection.
    const PortProgress& read_progress(unsigned port) const { return read_[port].progress; }
    const PortProgress& write_progress(unsigned port) const { return write_[port].progress; }
    unsigned read_rows_occupied(unsigned port) const { return read_[port].rows; }
    unsigned write_rows_occupied(unsigned port) const { return write_[port].rows; }
    /// Word held by DRAM-side read bank `bank` at `port`'s region row `row`.
    const Word& read_bank_word(unsigned bank, unsigned port, unsigned row) const;
    const Word& write_bank_word(unsigned bank, unsigned port, unsigned row) const;
    /// Complete port-side read slots not yet fully drained.
    unsigned read_slots_complete(unsigned port) const;

    void enable_event_log(bool on) { log_events_ = on; }
    const std::vector<TransposeEvent>& read_events() const { return read_events_; }
    const std::vector<TransposeEvent>& write_events() const { return write_events_; }

    unsigned rows_per_port() const noexcept { return rows_per_port_; }

private:
    struct Slot {
        std::vector<Word> words;
        std::vector<bool> filled;
        unsigned filled_count = 0;
        bool complete = false;
        Cycle completed_at = kNever;
        unsigned drain = 0;
        std::uint64_t line_seq = 0;
    };

    /// port_slot_count line slots recycled in strict FIFO order.
    struct SlotRing {
        std::vector<Slot> slots;
        unsigned oldest = 0;
        unsigned used = 0;

        Slot& at(unsigned i) { return slots[(oldest + i) % slots.size()]; }
        const Slot& at(unsigned i) const { return slots[(oldest + i) % slots.size()]; }
        bool full() const { return used == slots.size(); }
        Slot& claim();
        void release_oldest();
    };

    struct Landing {
        Line line;
        Cycle accepted_at;
        std::uint64_t seq;
    };

    struct ReadPort {
        PortProgress progress;
        unsigned rows = 0;       // occupied rows in the region
        unsigned reserved = 0;   // rows promised to granted, not-yet-landed lines
        std::vector<Cycle> written_at;
        std::vector<std::uint64_t> row_seq;
        std::deque<Landing> landing;
        SlotRing slots;
        std::optional<Word> out_reg;
        std::vector<ReadLineTiming> timing;
    };

    struct WritePort {
        PortProgress progress;
        unsigned rows = 0;
        unsigned assembled = 0;  // rows holding a fully assembled line
        unsigned reserved = 0;   // assembled lines claimed by grants
        std::vector<Cycle> assembled_at;
        SlotRing slots;
    };

    std::size_t bank_index(unsigned bank, unsigned port, unsigned row) const {
        return (static_cast<std::size_t>(bank) * lanes_ + port) * rows_per_port_ + row;
    }
    bool read_head_transposing(const ReadPort& rp) const { return rp.progress.join_cycle != kNever; }
    /// Rows free for a line written at step `write_step`.
    int read_rows_free_at(const ReadPort& rp, Cycle write_step) const;
    void advance_read_outputs(Cycle cycle);
    void land_read_lines(Cycle cycle);
    void check_port(unsigned port, unsigned active, const char* what) const;

    unsigned lanes_;
    unsigned rows_per_port_;
    unsigned read_active_;
    unsigned write_active_;

    std::vector<Word> read_banks_;
    std::vector<Word> write_banks_;
    std::vector<ReadPort> read_;
    std::vector<WritePort> write_;

    // Scratch lane vectors reused every cycle.
    std::vector<std::optional<Word>> lanes_in_;
    std::vector<std::optional<Word>> lanes_out_;
    std::vector<bool> bank_busy_;
    std::vector<unsigned> movers_;

    bool log_events_ = false;
    std::vector<TransposeEvent> read_events_;
    std::vector<TransposeEvent> write_events_;
};

}  // namespace medusa
