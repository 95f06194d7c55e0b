#include "medusa/baseline_network.hpp"

#include "medusa/errors.hpp"

#include <string>

namespace medusa {

BaselineNetwork::BaselineNetwork(const ValidatedConfig& cfg)
    : lanes_(cfg.lanes()),
      capacity_(cfg.max_burst_len()),
      read_active_(cfg.read_ports()),
      write_active_(cfg.write_ports()),
      read_(lanes_),
      write_(lanes_) {
    for (WritePort& wp : write_) wp.conv.resize(lanes_);
}

void BaselineNetwork::check_port(unsigned port, unsigned active, const char* what) const {
    if (port >= active) {
        throw MalformedRequest(std::string(what) + " port " + std::to_string(port) +
                               " is not active (" + std::to_string(active) + " active)");
    }
}

bool BaselineNetwork::read_push_line(unsigned port, Line line, Cycle cycle) {
    check_port(port, read_active_, "read");
    if (line.size() != lanes_) {
        throw InvalidGeometry("line has " + std::to_string(line.size()) + " words, expected " +
                              std::to_string(lanes_));
    }
    // One line per cycle through the demux.
    if (last_demux_cycle_ == cycle) return false;
    ReadPort& rp = read_[port];
    if (rp.fifo.size() >= capacity_) return false;
    last_demux_cycle_ = cycle;
    const std::uint64_t seq = rp.timing.size();
    rp.timing.push_back(ReadLineTiming{.arrival = cycle});
    rp.fifo.push_back(Entry{std::move(line), cycle, seq});
    if (rp.reserved > 0) --rp.reserved;
    return true;
}

bool BaselineNetwork::can_land_read_burst(unsigned port, unsigned lines, Cycle /*first_landing*/) const {
    check_port(port, read_active_, "read");
    const ReadPort& rp = read_[port];
    return rp.fifo.size() + rp.reserved + lines <= capacity_;
}

void BaselineNetwork::reserve_read(unsigned port, unsigned lines) {
    check_port(port, read_active_, "read");
    read_[port].reserved += lines;
}

std::optional<Word> BaselineNetwork::read_pop_word(unsigned port, Cycle /*cycle*/) {
    check_port(port, read_active_, "read");
    std::optional<Word> out;
    out.swap(read_[port].out_reg);
    return out;
}

bool BaselineNetwork::write_push_word(unsigned port, const Word& w, Cycle cycle) {
    check_port(port, write_active_, "write");
    WritePort& wp = write_[port];
    if (wp.conv_count == lanes_) return false;
    wp.conv[wp.conv_count++] = w;
    if (wp.conv_count == lanes_) wp.conv_completed_at = cycle;
    return true;
}

unsigned BaselineNetwork::write_lines_ready(unsigned port, Cycle cycle) const {
    check_port(port, write_active_, "write");
    const WritePort& wp = write_[port];
    unsigned ready = 0;
    for (const Entry& e : wp.fifo) {
        if (e.at + timing::kFifoLatency > cycle) break;
        ++ready;
    }
    return ready > wp.reserved ? ready - wp.reserved : 0;
}

void BaselineNetwork::reserve_write(unsigned port, unsigned lines) {
    check_port(port, write_active_, "write");
    write_[port].reserved += lines;
}

std::optional<Line> BaselineNetwork::write_pop_line(unsigned selected_port, Cycle cycle) {
    check_port(selected_port, write_active_, "write");
    WritePort& wp = write_[selected_port];
    if (wp.fifo.empty() || wp.fifo.front().at + timing::kFifoLatency > cycle) return std::nullopt;
    Line line = std::move(wp.fifo.front().line);
    wp.fifo.pop_front();
    if (wp.reserved > 0) --wp.reserved;
    return line;
}

void BaselineNetwork::step(Cycle cycle) {
    for (unsigned p = 0; p < read_active_; ++p) {
        ReadPort& rp = read_[p];
        if (!rp.out_reg && rp.conv && rp.conv->at < cycle) {
            const unsigned idx = rp.conv_index++;
            rp.out_reg = rp.conv->line.words[idx];
            ReadLineTiming& t = rp.timing[rp.conv->seq];
            if (idx == 0) t.first_word = cycle;
            if (idx == lanes_ - 1) t.last_word = cycle;
            if (rp.conv_index == lanes_) {
                rp.conv.reset();
                rp.conv_index = 0;
            }
        }
        if (!rp.conv && rp.staging && rp.staging->at + timing::kHandoffLatency <= cycle) {
            rp.conv = std::move(rp.staging);
            rp.conv->at = cycle;
            rp.staging.reset();
        }
        if (!rp.staging && !rp.fifo.empty() && rp.fifo.front().at + timing::kFifoLatency <= cycle) {
            rp.staging = std::move(rp.fifo.front());
            rp.staging->at = cycle;
            rp.fifo.pop_front();
        }
    }
    for (unsigned p = 0; p < write_active_; ++p) {
        WritePort& wp = write_[p];
        if (wp.conv_count == lanes_ && wp.conv_completed_at + 1 <= cycle && wp.fifo.size() < capacity_) {
            wp.fifo.push_back(Entry{Line{wp.conv}, cycle, 0});
            wp.conv_count = 0;
            wp.conv_completed_at = kNever;
        }
    }
}

bool BaselineNetwork::empty() const {
    for (const ReadPort& rp : read_) {
        if (!rp.fifo.empty() || rp.staging || rp.conv || rp.out_reg) return false;
    }
    for (const WritePort& wp : write_) {
        if (wp.conv_count || !wp.fifo.empty()) return false;
    }
    return true;
}

}  // namespace medusa
