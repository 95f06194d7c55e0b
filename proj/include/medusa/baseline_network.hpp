#pragma once

// Cycle-accurate model of the conventional interconnect.
//
// Read:  demux -> per-port wide FIFO -> staging register -> width converter
//        -> port output register.
// Write: width converter -> per-port wide FIFO -> N-to-1 line mux.
//
// FIFO capacity is max_burst_len lines per port. The converter never bypasses
// the FIFO.

#include "medusa/config.hpp"
#include "medusa/interconnect.hpp"

#include <deque>
#include <optional>
#include <vector>

namespace medusa {

class BaselineNetwork final : public Interconnect {
public:
    explicit BaselineNetwork(const ValidatedConfig& cfg);

    NetworkKind kind() const noexcept override { return NetworkKind::Baseline; }

    bool read_push_line(unsigned port, Line line, Cycle cycle);
    std::optional<Word> read_pop_word(unsigned port, Cycle cycle);
    bool write_push_word(unsigned port, const Word& w, Cycle cycle);
    std::optional<Line> write_pop_line(unsigned selected_port, Cycle cycle);

    bool accept_read_line(unsigned port, Line line, Cycle cycle) override {
        return read_push_line(port, std::move(line), cycle);
    }
    bool can_land_read_burst(unsigned port, unsigned lines, Cycle first_landing) const override;
    void reserve_read(unsigned port, unsigned lines) override;
    std::optional<Word> pop_read_word(unsigned port, Cycle cycle) override {
        return read_pop_word(port, cycle);
    }
    bool push_write_word(unsigned port, const Word& w, Cycle cycle) override {
        return write_push_word(port, w, cycle);
    }
    unsigned write_lines_ready(unsigned port, Cycle cycle) const override;
    void reserve_write(unsigned port, unsigned lines) override;
    std::optional<Line> pop_write_line(unsigned port, Cycle cycle) override {
        return write_pop_line(port, cycle);
    }
    void step(Cycle cycle) override;
    bool empty() const override;
    const std::vector<ReadLineTiming>& read_timing(unsigned port) const override {
        return read_[port].timing;
    }

    unsigned read_fifo_size(unsigned port) const { return static_cast<unsigned>(read_[port].fifo.size()); }
    unsigned write_fifo_size(unsigned port) const { return static_cast<unsigned>(write_[port].fifo.size()); }
    unsigned fifo_capacity() const noexcept { return capacity_; }

private:
    struct Entry {
        Line line;
        Cycle at = kNever;  // enqueue cycle, or load cycle once past the FIFO
        std::uint64_t seq = 0;
    };

    struct ReadPort {
        std::deque<Entry> fifo;
        std::optional<Entry> staging;
        std::optional<Entry> conv;
        unsigned conv_index = 0;
        std::optional<Word> out_reg;
        unsigned reserved = 0;
        std::vector<ReadLineTiming> timing;
    };

    struct WritePort {
        std::vector<Word> conv;
        unsigned conv_count = 0;
        Cycle conv_completed_at = kNever;
        std::deque<Entry> fifo;
        unsigned reserved = 0;
    };

    void check_port(unsigned port, unsigned active, const char* what) const;

    unsigned lanes_;
    unsigned capacity_;
    unsigned read_active_;
    unsigned write_active_;
    std::vector<ReadPort> read_;
    std::vector<WritePort> write_;
    Cycle last_demux_cycle_ = kNever;
};

}  // namespace medusa
