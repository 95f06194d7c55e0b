#include "medusa/traffic.hpp"

#include "medusa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace medusa {

const char* to_string(PatternKind kind) {
    return kind == PatternKind::Stream ? "stream" : "random";
}

PatternKind parse_pattern_kind(const std::string& s) {
    if (s == "stream") return PatternKind::Stream;
    if (s == "random") return PatternKind::Random;
    throw UsageError("unknown pattern '" + s + "' (expected stream or random)");
}

std::vector<std::vector<Word>> gen_write_data(const std::vector<TimedRequest>& requests,
                                              const ValidatedConfig& cfg, std::uint64_t seed) {
    const unsigned n = cfg.lanes();
    std::vector<std::vector<Word>> data(n);
    std::mt19937_64 rng(seed ^ 0x5DEECE66Dull);
    for (const TimedRequest& tr : requests) {
        if (tr.req.dir != Direction::Write) continue;
        auto& stream = data.at(tr.req.port);
        for (unsigned k = 0; k < tr.req.burst_len; ++k) {
            for (unsigned i = 0; i < n; ++i) {
                Word w{rng() & payload_mask(cfg.w_acc()), std::nullopt};
                if (cfg.tagged()) w.tag = Tag{static_cast<std::uint16_t>(tr.req.port), static_cast<std::uint16_t>(i)};
                stream.push_back(w);
            }
        }
    }
    return data;
}

namespace {

Workload gen_stream(const ValidatedConfig& cfg) {
    const std::uint64_t burst = cfg.max_burst_len();
    const std::uint64_t per_burst_cycles = burst * cfg.lanes();
    const std::uint64_t bursts = (cfg.sim_cycles() + per_burst_cycles - 1) / per_burst_cycles + 1;
    Workload w;
    for (std::uint64_t k = 0; k < bursts; ++k) {
        for (unsigned p = 0; p < cfg.read_ports(); ++p) {
            const std::uint64_t base = static_cast<std::uint64_t>(p) << 32;
            w.requests.push_back(TimedRequest{0, MemoryRequest{p, Direction::Read, base + k * burst,
                                                               cfg.max_burst_len()}});
        }
    }
    w.write_data.resize(cfg.lanes());
    return w;
}

Workload gen_random(const ValidatedConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Direction, unsigned>> targets;
    for (unsigned p = 0; p < cfg.read_ports(); ++p) targets.emplace_back(Direction::Read, p);
    for (unsigned p = 0; p < cfg.write_ports(); ++p) targets.emplace_back(Direction::Write, p);

    const double load =
        std::min(0.8, 0.75 * static_cast<double>(targets.size()) / cfg.lanes());
    const double mean_lines = (cfg.max_burst_len() + 1) / 2.0;
    const auto max_gap = static_cast<std::uint64_t>(std::llround(2.0 * mean_lines / load));

    std::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
    std::uniform_int_distribution<unsigned> burst(1, cfg.max_burst_len());
    std::uniform_int_distribution<std::uint64_t> gap(0, max_gap);
    std::uniform_int_distribution<std::uint64_t> read_addr(0, kReadRegionLines - cfg.max_burst_len());

    Workload w;
    std::uint64_t next_write = kWriteRegionBase;
    for (Cycle t = gap(rng); t < cfg.sim_cycles(); t += gap(rng)) {
        const auto [dir, port] = targets[pick(rng)];
        const unsigned len = burst(rng);
        MemoryRequest r{port, dir, 0, len};
        if (dir == Direction::Read) {
            r.line_addr = read_addr(rng);
        } else {
            r.line_addr = next_write;
            next_write += len;
        }
        w.requests.push_back(TimedRequest{t, r});
    }
    w.write_data = gen_write_data(w.requests, cfg, seed);
    return w;
}

}  // namespace

Workload gen_traffic(const TrafficPattern& pattern, const ValidatedConfig& cfg) {
    return pattern.kind == PatternKind::Stream ? gen_stream(cfg) : gen_random(cfg, pattern.seed);
}

void write_trace(std::ostream& out, const Workload& workload) {
    for (const TimedRequest& tr : workload.requests) {
        out << tr.issue << ' ' << tr.req.port << ' ' << to_string(tr.req.dir) << ' '
            << tr.req.line_addr << ' ' << tr.req.burst_len << '\n';
    }
}

Workload read_trace(std::istream& in, const ValidatedConfig& cfg, std::uint64_t seed) {
    Workload w;
    std::string text;
    unsigned lineno = 0;
    while (std::getline(in, text)) {
        ++lineno;
        if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
        std::istringstream ss(text);
        std::string first;
        if (!(ss >> first)) continue;
        TimedRequest tr;
        std::string dir;
        std::istringstream head(first);
        if (!(head >> tr.issue) || !(ss >> tr.req.port >> dir >> tr.req.line_addr >> tr.req.burst_len) ||
            (dir != "R" && dir != "W")) {
            throw MalformedRequest("trace line " + std::to_string(lineno) + ": expected "
                                   "'cycle port R|W line_addr burst_len'");
        }
        std::string extra;
        if (ss >> extra) throw MalformedRequest("trace line " + std::to_string(lineno) + ": trailing text");
        tr.req.dir = dir == "R" ? Direction::Read : Direction::Write;
        const unsigned active = tr.req.dir == Direction::Read ? cfg.read_ports() : cfg.write_ports();
        if (tr.req.port >= active || tr.req.burst_len < 1 || tr.req.burst_len > cfg.max_burst_len()) {
            throw MalformedRequest("trace line " + std::to_string(lineno) + ": port or burst out of range");
        }
        w.requests.push_back(tr);
    }
    std::stable_sort(w.requests.begin(), w.requests.end(),
                     [](const TimedRequest& a, const TimedRequest& b) { return a.issue < b.issue; });
    w.write_data = gen_write_data(w.requests, cfg, seed);
    return w;
}

}  // namespace medusa
