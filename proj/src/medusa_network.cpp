#include "medusa/medusa_network.hpp"

#include "medusa/errors.hpp"
#include "medusa/rotation.hpp"

#include <algorithm>
#include <string>

namespace medusa {
namespace {

// written_at marker for preloaded rows: joinable on any cycle.
constexpr Cycle kPreloaded = kNever - 1;

bool row_joinable(Cycle written_at, Cycle cycle) {
    if (written_at == kPreloaded) return true;
    return written_at != kNever && written_at + timing::kHandoffLatency <= cycle;
}

}  // namespace

MedusaNetwork::Slot& MedusaNetwork::SlotRing::claim() {
    Slot& s = slots[(oldest + used) % slots.size()];
    std::fill(s.filled.begin(), s.filled.end(), false);
    s.filled_count = 0;
    s.complete = false;
    s.completed_at = kNever;
    s.drain = 0;
    s.line_seq = 0;
    ++used;
    return s;
}

void MedusaNetwork::SlotRing::release_oldest() {
    oldest = (oldest + 1) % slots.size();
    --used;
}

MedusaNetwork::MedusaNetwork(const ValidatedConfig& cfg)
    : lanes_(cfg.lanes()),
      rows_per_port_(cfg.max_burst_len()),
      read_active_(cfg.read_ports()),
      write_active_(cfg.write_ports()),
      read_banks_(static_cast<std::size_t>(lanes_) * lanes_ * rows_per_port_),
      write_banks_(static_cast<std::size_t>(lanes_) * lanes_ * rows_per_port_),
      read_(lanes_),
      write_(lanes_),
      lanes_in_(lanes_),
      lanes_out_(lanes_),
      bank_busy_(lanes_, false) {
    auto make_ring = [&] {
        SlotRing ring;
        ring.slots.resize(cfg.port_slot_count());
        for (Slot& s : ring.slots) {
            s.words.resize(lanes_);
            s.filled.assign(lanes_, false);
        }
        return ring;
    };
    for (ReadPort& rp : read_) {
        rp.written_at.assign(rows_per_port_, kNever);
        rp.row_seq.assign(rows_per_port_, 0);
        rp.slots = make_ring();
    }
    for (WritePort& wp : write_) {
        wp.assembled_at.assign(rows_per_port_, kNever);
        wp.slots = make_ring();
    }
    movers_.reserve(lanes_);
}

void MedusaNetwork::check_port(unsigned port, unsigned active, const char* what) const {
    if (port >= active) {
        throw MalformedRequest(std::string(what) + " port " + std::to_string(port) +
                               " is not active (" + std::to_string(active) + " active)");
    }
}

const Word& MedusaNetwork::read_bank_word(unsigned bank, unsigned port, unsigned row) const {
    return read_banks_.at(bank_index(bank, port, row));
}

const Word& MedusaNetwork::write_bank_word(unsigned bank, unsigned port, unsigned row) const {
    return write_banks_.at(bank_index(bank, port, row));
}

unsigned MedusaNetwork::read_slots_complete(unsigned port) const {
    const SlotRing& ring = read_.at(port).slots;
    unsigned n = 0;
    for (unsigned i = 0; i < ring.used; ++i) n += ring.at(i).complete ? 1 : 0;
    return n;
}

// ---------------------------------------------------------------------------
// Read path

int MedusaNetwork::read_rows_free_at(const ReadPort& rp, Cycle write_step) const {
    int free_rows = static_cast<int>(rows_per_port_) - static_cast<int>(rp.rows) -
                    static_cast<int>(rp.landing.size());
    // A head line in transposition never stalls, so its row is known to be
    // released by join + N - 1. Later lines depend on port drain and are not
    // counted.
    if (read_head_transposing(rp) && rp.progress.join_cycle + lanes_ - 1 <= write_step) {
        ++free_rows;
    }
    return free_rows;
}

bool MedusaNetwork::read_accept_line(unsigned port, Line line, Cycle cycle) {
    check_port(port, read_active_, "read");
    if (line.size() != lanes_) {
        throw InvalidGeometry("line has " + std::to_string(line.size()) + " words, expected " +
                              std::to_string(lanes_));
    }
    ReadPort& rp = read_[port];
    if (read_rows_free_at(rp, cycle + timing::kFifoLatency) <= 0) return false;
    const std::uint64_t seq = rp.timing.size();
    rp.timing.push_back(ReadLineTiming{.arrival = cycle});
    rp.landing.push_back(Landing{std::move(line), cycle, seq});
    if (rp.reserved > 0) --rp.reserved;
    return true;
}

void MedusaNetwork::preload_read_line(unsigned port, Line line) {
    check_port(port, read_active_, "read");
    if (line.size() != lanes_) throw InvalidGeometry("preloaded line has wrong word count");
    ReadPort& rp = read_[port];
    if (rp.rows + rp.landing.size() >= rows_per_port_) {
        throw InvalidGeometry("read region of port " + std::to_string(port) + " is full");
    }
    const unsigned row = rp.progress.tail_row;
    for (unsigned y = 0; y < lanes_; ++y) read_banks_[bank_index(y, port, row)] = line.words[y];
    rp.written_at[row] = kPreloaded;
    rp.row_seq[row] = rp.timing.size();
    rp.timing.push_back(ReadLineTiming{.arrival = 0});
    rp.progress.tail_row = (row + 1) % rows_per_port_;
    ++rp.rows;
}

bool MedusaNetwork::can_land_read_burst(unsigned port, unsigned lines, Cycle first_landing) const {
    check_port(port, read_active_, "read");
    const ReadPort& rp = read_[port];
    const int free_rows = read_rows_free_at(rp, first_landing + timing::kFifoLatency) -
                          static_cast<int>(rp.reserved);
    return free_rows >= static_cast<int>(lines);
}

void MedusaNetwork::reserve_read(unsigned port, unsigned lines) {
    check_port(port, read_active_, "read");
    read_[port].reserved += lines;
}

void MedusaNetwork::land_read_lines(Cycle cycle) {
    for (unsigned p = 0; p < read_active_; ++p) {
        ReadPort& rp = read_[p];
        while (!rp.landing.empty() && rp.landing.front().accepted_at + timing::kFifoLatency <= cycle) {
            if (rp.rows == rows_per_port_) {
                throw Error("read region overflow on port " + std::to_string(p));
            }
            Landing& l = rp.landing.front();
            const unsigned row = rp.progress.tail_row;
            for (unsigned y = 0; y < lanes_; ++y) {
                read_banks_[bank_index(y, p, row)] = l.line.words[y];
            }
            rp.written_at[row] = cycle;
            rp.row_seq[row] = l.seq;
            rp.progress.tail_row = (row + 1) % rows_per_port_;
            ++rp.rows;
            rp.landing.pop_front();
        }
    }
}

unsigned MedusaNetwork::read_transpose_step(Cycle cycle) {
    const unsigned rot = static_cast<unsigned>(cycle % lanes_);
    std::fill(lanes_in_.begin(), lanes_in_.end(), std::nullopt);
    std::fill(bank_busy_.begin(), bank_busy_.end(), false);
    movers_.clear();

    for (unsigned p = 0; p < read_active_; ++p) {
        ReadPort& rp = read_[p];
        if (rp.rows == 0) continue;
        const unsigned head = rp.progress.head_row;
        if (!read_head_transposing(rp)) {
            if (!row_joinable(rp.written_at[head], cycle) || rp.slots.full()) continue;
            rp.progress.join_cycle = cycle;
            Slot& slot = rp.slots.claim();
            slot.line_seq = rp.row_seq[head];
            rp.timing[slot.line_seq].join = cycle;
        }
        const unsigned bank = (p + rot) % lanes_;
        if (bank_busy_[bank]) {
            throw BankConflict("read bank " + std::to_string(bank) + " addressed twice in cycle " +
                               std::to_string(cycle));
        }
        bank_busy_[bank] = true;
        lanes_in_[bank] = read_banks_[bank_index(bank, p, head)];
        movers_.push_back(p);
    }
    if (movers_.empty()) return 0;

    rotate_left_into<std::optional<Word>>(lanes_in_, rot, lanes_out_);

    TransposeEvent* event = nullptr;
    if (log_events_) {
        read_events_.push_back(TransposeEvent{cycle, rot, {}});
        event = &read_events_.back();
    }
    for (unsigned p : movers_) {
        ReadPort& rp = read_[p];
        const unsigned pos = (p + rot) % lanes_;
        if (!lanes_out_[p]) throw Error("rotation delivered an idle lane to read port " + std::to_string(p));
        Slot& slot = rp.slots.at(rp.slots.used - 1);
        slot.words[pos] = *lanes_out_[p];
        slot.filled[pos] = true;
        ++slot.filled_count;
        if (event) event->moves.push_back(TransposeMove{p, pos, pos, p, pos});
        if (++rp.progress.words_done == lanes_) {
            slot.complete = true;
            slot.completed_at = cycle;
            rp.timing[slot.line_seq].transposed = cycle;
            rp.written_at[rp.progress.head_row] = kNever;
            rp.progress.head_row = (rp.progress.head_row + 1) % rows_per_port_;
            --rp.rows;
            rp.progress.words_done = 0;
            rp.progress.join_cycle = kNever;
        }
    }
    return static_cast<unsigned>(movers_.size());
}

void MedusaNetwork::advance_read_outputs(Cycle cycle) {
    for (unsigned p = 0; p < read_active_; ++p) {
        ReadPort& rp = read_[p];
        if (rp.out_reg || rp.slots.used == 0) continue;
        Slot& slot = rp.slots.at(0);
        // A line is consumable only once fully transposed.
        if (!slot.complete || slot.completed_at + 1 + timing::kOutputRegister > cycle) continue;
        const unsigned idx = slot.drain++;
        rp.out_reg = slot.words[idx];
        ReadLineTiming& t = rp.timing[slot.line_seq];
        if (idx == 0) t.first_word = cycle;
        if (idx == lanes_ - 1) t.last_word = cycle;
        if (slot.drain == lanes_) rp.slots.release_oldest();
    }
}

std::optional<Word> MedusaNetwork::read_port_pop(unsigned port, Cycle /*cycle*/) {
    check_port(port, read_active_, "read");
    std::optional<Word> out;
    out.swap(read_[port].out_reg);
    return out;
}

// ---------------------------------------------------------------------------
// Write path

bool MedusaNetwork::write_port_push(unsigned port, const Word& w, Cycle cycle) {
    check_port(port, write_active_, "write");
    SlotRing& ring = write_[port].slots;
    Slot* slot = nullptr;
    if (ring.used > 0 && !ring.at(ring.used - 1).complete) {
        slot = &ring.at(ring.used - 1);
    } else if (!ring.full()) {
        slot = &ring.claim();
    } else {
        return false;
    }
    slot->words[slot->filled_count] = w;
    slot->filled[slot->filled_count] = true;
    if (++slot->filled_count == lanes_) {
        slot->complete = true;
        slot->completed_at = cycle;
    }
    return true;
}

unsigned MedusaNetwork::write_transpose_step(Cycle cycle) {
    const unsigned rot = static_cast<unsigned>(cycle % lanes_);
    std::fill(lanes_in_.begin(), lanes_in_.end(), std::nullopt);
    std::fill(bank_busy_.begin(), bank_busy_.end(), false);
    movers_.clear();

    for (unsigned p = 0; p < write_active_; ++p) {
        WritePort& wp = write_[p];
        if (wp.slots.used == 0) continue;
        const Slot& slot = wp.slots.at(0);
        // Transposition starts only once every word of the line is present.
        if (!slot.complete || slot.completed_at + 1 > cycle) continue;
        if (wp.progress.join_cycle == kNever) {
            if (wp.rows == rows_per_port_) continue;
            wp.assembled_at[wp.progress.tail_row] = kNever;
            wp.progress.tail_row = (wp.progress.tail_row + 1) % rows_per_port_;
            ++wp.rows;
            wp.progress.join_cycle = cycle;
        }
        const unsigned out_bank = (p + rot) % lanes_;
        if (bank_busy_[out_bank]) {
            throw BankConflict("write bank " + std::to_string(out_bank) +
                               " addressed twice in cycle " + std::to_string(cycle));
        }
        bank_busy_[out_bank] = true;
        lanes_in_[p] = slot.words[out_bank];
        movers_.push_back(p);
    }
    if (movers_.empty()) return 0;

    // Right rotation by c, through the same left-rotating unit.
    rotate_left_into<std::optional<Word>>(lanes_in_, (lanes_ - rot) % lanes_, lanes_out_);

    TransposeEvent* event = nullptr;
    if (log_events_) {
        write_events_.push_back(TransposeEvent{cycle, (lanes_ - rot) % lanes_, {}});
        event = &write_events_.back();
    }
    for (unsigned p : movers_) {
        WritePort& wp = write_[p];
        const unsigned q = (p + rot) % lanes_;
        if (!lanes_out_[q]) throw Error("rotation delivered an idle lane to write bank " + std::to_string(q));
        const unsigned row = (wp.progress.tail_row + rows_per_port_ - 1) % rows_per_port_;
        write_banks_[bank_index(q, p, row)] = *lanes_out_[q];
        if (event) event->moves.push_back(TransposeMove{p, q, p, q, row});
        if (++wp.progress.words_done == lanes_) {
            wp.assembled_at[row] = cycle;
            ++wp.assembled;
            wp.progress.words_done = 0;
            wp.progress.join_cycle = kNever;
            wp.slots.release_oldest();
        }
    }
    return static_cast<unsigned>(movers_.size());
}

unsigned MedusaNetwork::write_lines_ready(unsigned port, Cycle cycle) const {
    check_port(port, write_active_, "write");
    const WritePort& wp = write_[port];
    unsigned ready = 0;
    for (unsigned i = 0; i < wp.rows; ++i) {
        const Cycle at = wp.assembled_at[(wp.progress.head_row + i) % rows_per_port_];
        if (at == kNever || at >= cycle) break;
        ++ready;
    }
    return ready > wp.reserved ? ready - wp.reserved : 0;
}

void MedusaNetwork::reserve_write(unsigned port, unsigned lines) {
    check_port(port, write_active_, "write");
    write_[port].reserved += lines;
}

std::optional<Line> MedusaNetwork::write_line_pop(unsigned port, Cycle cycle) {
    check_port(port, write_active_, "write");
    WritePort& wp = write_[port];
    if (wp.rows == 0) return std::nullopt;
    const unsigned row = wp.progress.head_row;
    const Cycle at = wp.assembled_at[row];
    if (at == kNever || at >= cycle) return std::nullopt;
    Line line;
    line.words.resize(lanes_);
    for (unsigned q = 0; q < lanes_; ++q) line.words[q] = write_banks_[bank_index(q, port, row)];
    wp.assembled_at[row] = kNever;
    wp.progress.head_row = (row + 1) % rows_per_port_;
    --wp.rows;
    --wp.assembled;
    if (wp.reserved > 0) --wp.reserved;
    return line;
}

// ---------------------------------------------------------------------------

void MedusaNetwork::step(Cycle cycle) {
    advance_read_outputs(cycle);
    read_transpose_step(cycle);
    land_read_lines(cycle);
    write_transpose_step(cycle);
}

bool MedusaNetwork::empty() const {
    for (const ReadPort& rp : read_) {
        if (rp.rows || !rp.landing.empty() || rp.slots.used || rp.out_reg) return false;
    }
    for (const WritePort& wp : write_) {
        if (wp.rows || wp.slots.used) return false;
    }
    return true;
}

}  // namespace medusa
