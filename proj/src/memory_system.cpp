#include "medusa/memory_system.hpp"

#include "medusa/errors.hpp"

#include <algorithm>
#include <string>

namespace medusa {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

const char* to_string(Direction d) { return d == Direction::Read ? "R" : "W"; }

Line initial_line_content(std::uint64_t seed, std::uint64_t line_addr, unsigned lanes, unsigned w_acc) {
    Line line;
    line.words.resize(lanes);
    const std::uint64_t base = splitmix64(seed) ^ splitmix64(line_addr + 0x632BE59BD9B4E019ull);
    for (unsigned i = 0; i < lanes; ++i) {
        line.words[i].value = splitmix64(base + i) & payload_mask(w_acc);
    }
    return line;
}

// ---------------------------------------------------------------------------

Arbiter::Arbiter(const ValidatedConfig& cfg)
    : lanes_(cfg.lanes()),
      max_burst_(cfg.max_burst_len()),
      read_ports_(cfg.read_ports()),
      write_ports_(cfg.write_ports()),
      queues_(2 * static_cast<std::size_t>(lanes_)),
      grants_(2 * static_cast<std::size_t>(lanes_), 0) {}

bool Arbiter::submit_request(const MemoryRequest& r) {
    if (r.burst_len < 1 || r.burst_len > max_burst_) {
        throw MalformedRequest("burst_len " + std::to_string(r.burst_len) + " outside [1, " +
                               std::to_string(max_burst_) + "]");
    }
    const unsigned active = r.dir == Direction::Read ? read_ports_ : write_ports_;
    if (r.port >= active) {
        throw MalformedRequest(std::string(to_string(r.dir)) + " request for inactive port " +
                               std::to_string(r.port));
    }
    auto& q = queues_[slot_of(r.port, r.dir)];
    if (q.size() >= kRequestQueueDepth) return false;
    q.push_back(r);
    return true;
}

std::optional<Grant> Arbiter::arbiter_step(Cycle cycle, Interconnect& net, DramStub& dram) {
    if (!dram.can_grant(cycle)) return std::nullopt;
    const unsigned slots = static_cast<unsigned>(queues_.size());
    for (unsigned k = 0; k < slots; ++k) {
        const unsigned s = (next_ + k) % slots;
        auto& q = queues_[s];
        if (q.empty()) continue;
        const MemoryRequest& r = q.front();
        bool eligible = false;
        if (r.dir == Direction::Read) {
            eligible = net.can_land_read_burst(r.port, r.burst_len, cycle + dram.latency());
        } else {
            // Only ports that already hold the whole burst may use the bus.
            eligible = net.write_lines_ready(r.port, cycle) >= r.burst_len;
        }
        if (!eligible) continue;
        if (r.dir == Direction::Read) {
            net.reserve_read(r.port, r.burst_len);
        } else {
            net.reserve_write(r.port, r.burst_len);
        }
        Grant g = dram.start_burst(r, cycle);
        q.pop_front();
        ++grants_[s];
        next_ = (s + 1) % slots;
        return g;
    }
    return std::nullopt;
}

bool Arbiter::idle() const {
    for (const auto& q : queues_) {
        if (!q.empty()) return false;
    }
    return true;
}

std::size_t Arbiter::queued(unsigned port, Direction dir) const {
    return queues_.at(slot_of(port, dir)).size();
}

// ---------------------------------------------------------------------------

DramStub::DramStub(const ValidatedConfig& cfg)
    : lanes_(cfg.lanes()),
      w_acc_(cfg.w_acc()),
      latency_(cfg.dram_latency()),
      seed_(cfg.seed()),
      tagged_(cfg.tagged()) {}

Grant DramStub::start_burst(const MemoryRequest& r, Cycle cycle) {
    if (replay_mode_) throw Error("DRAM stub in replay mode does not take grants");
    Grant g{r, cycle, std::max<Cycle>(cycle + latency_, bus_free_at_)};
    bus_free_at_ = g.first_line_at + r.burst_len;
    bursts_.push_back(Active{g, 0});
    return g;
}

Line DramStub::read_line(std::uint64_t line_addr) const {
    if (auto it = storage_.find(line_addr); it != storage_.end()) return it->second;
    return initial_line_content(seed_, line_addr, lanes_, w_acc_);
}

void DramStub::emit_read(unsigned port, std::uint64_t line_addr, Cycle cycle, Interconnect& net) {
    Line line = read_line(line_addr);
    if (tagged_) {
        retag(line, static_cast<std::uint16_t>(port));
    } else {
        for (Word& w : line.words) w.tag.reset();
    }
    if (!net.accept_read_line(port, std::move(line), cycle)) {
        ++stalls_;
        return;
    }
    emissions_.push_back(Emission{cycle, port, line_addr});
    bus_cycles_.push_back(cycle);
    ++lines_;
}

bool DramStub::dram_step(Cycle cycle, Interconnect& net) {
    if (replay_mode_) {
        if (replay_next_ == replay_.size() || replay_[replay_next_].cycle > cycle) return false;
        const Emission& e = replay_[replay_next_];
        const std::uint64_t before = lines_;
        emit_read(e.port, e.line_addr, cycle, net);
        if (lines_ == before) return false;
        ++replay_next_;
        return true;
    }

    if (bursts_.empty()) return false;
    Active& a = bursts_.front();
    if (a.grant.first_line_at + a.next > cycle) return false;
    const MemoryRequest& r = a.grant.req;
    const std::uint64_t addr = r.line_addr + a.next;
    bool moved = false;
    if (r.dir == Direction::Read) {
        const std::uint64_t before = lines_;
        emit_read(r.port, addr, cycle, net);
        moved = lines_ != before;
    } else if (auto line = net.pop_write_line(r.port, cycle)) {
        storage_[addr] = std::move(*line);
        bus_cycles_.push_back(cycle);
        ++lines_;
        moved = true;
    } else {
        ++stalls_;
    }
    if (!moved) {
        // The whole bus schedule slips by one cycle.
        for (Active& b : bursts_) ++b.grant.first_line_at;
        ++bus_free_at_;
        return false;
    }
    if (++a.next == r.burst_len) bursts_.pop_front();
    return true;
}

void DramStub::load_replay(std::vector<Emission> schedule) {
    if (!bursts_.empty()) throw Error("cannot enter replay mode with bursts in flight");
    replay_mode_ = true;
    replay_ = std::move(schedule);
    replay_next_ = 0;
}

bool DramStub::idle() const noexcept {
    return bursts_.empty() && (!replay_mode_ || replay_next_ == replay_.size());
}

bool DramStub::awaiting_line(Cycle cycle) const noexcept {
    if (replay_mode_) return replay_next_ < replay_.size() && replay_[replay_next_].cycle > cycle;
    return !bursts_.empty() && bursts_.front().grant.first_line_at + bursts_.front().next > cycle;
}

// ---------------------------------------------------------------------------

OracleResult oracle_expected(const Workload& workload, const ValidatedConfig& cfg) {
    const unsigned n = cfg.lanes();
    OracleResult out;
    out.delivered.resize(n);
    std::vector<std::size_t> write_cursor(n, 0);

    auto lookup = [&](std::uint64_t addr) {
        if (auto it = out.storage.find(addr); it != out.storage.end()) return it->second;
        return initial_line_content(cfg.seed(), addr, n, cfg.w_acc());
    };

    for (const TimedRequest& tr : workload.requests) {
        const MemoryRequest& r = tr.req;
        for (unsigned k = 0; k < r.burst_len; ++k) {
            const std::uint64_t addr = r.line_addr + k;
            if (r.dir == Direction::Read) {
                const Line line = lookup(addr);
                for (unsigned i = 0; i < n; ++i) {
                    Word w{line.words[i].value, std::nullopt};
                    if (cfg.tagged()) w.tag = Tag{static_cast<std::uint16_t>(r.port), static_cast<std::uint16_t>(i)};
                    out.delivered.at(r.port).push_back(w);
                }
            } else {
                const auto& stream = workload.write_data.at(r.port);
                Line line;
                line.words.reserve(n);
                for (unsigned i = 0; i < n; ++i) line.words.push_back(stream.at(write_cursor[r.port]++));
                out.storage[addr] = std::move(line);
            }
        }
    }
    return out;
}

}  // namespace medusa
