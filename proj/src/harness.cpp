#include "medusa/harness.hpp"

#include "medusa/baseline_network.hpp"
#include "medusa/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <memory>
#include <sstream>

namespace medusa {
namespace {

std::unique_ptr<Interconnect> make_network(const ValidatedConfig& cfg, NetworkKind kind) {
    if (kind == NetworkKind::Medusa) return std::make_unique<MedusaNetwork>(cfg);
    return std::make_unique<BaselineNetwork>(cfg);
}

std::string describe(const Word& w) {
    std::ostringstream os;
    os << "0x" << std::hex << w.value << std::dec;
    if (w.tag) os << " (" << w.tag->port << "," << w.tag->index << ")";
    return os.str();
}

}  // namespace

Cycle warmup_cycles(const ValidatedConfig& cfg) {
    return 2 * (static_cast<Cycle>(cfg.dram_latency()) + cfg.lanes() + cfg.max_burst_len());
}

SimResult run_simulation(const ValidatedConfig& cfg, NetworkKind kind, const Workload& workload,
                         const SimOptions& options) {
    const unsigned n = cfg.lanes();
    const unsigned n_read = cfg.read_ports();
    const unsigned n_write = cfg.write_ports();

    auto net = make_network(cfg, kind);
    auto* medusa = dynamic_cast<MedusaNetwork*>(net.get());
    if (medusa && options.record_events) medusa->enable_event_log(true);
    Arbiter arbiter(cfg);
    DramStub dram(cfg);

    std::vector<std::uint64_t> write_words_needed(n, 0);
    for (const TimedRequest& tr : workload.requests) {
        if (tr.req.dir == Direction::Write) {
            if (options.replay) throw UsageError("replay runs take read-only workloads");
            write_words_needed.at(tr.req.port) += static_cast<std::uint64_t>(tr.req.burst_len) * n;
        }
    }
    for (unsigned p = 0; p < n; ++p) {
        const std::size_t have = p < workload.write_data.size() ? workload.write_data[p].size() : 0;
        if (have < write_words_needed[p]) {
            throw MalformedRequest("write port " + std::to_string(p) + " has " + std::to_string(have) +
                                   " data words, requests need " + std::to_string(write_words_needed[p]));
        }
    }
    if (options.replay) dram.load_replay(*options.replay);

    SimResult result;
    result.network = kind;
    result.delivered.resize(n);
    Metrics& m = result.metrics;
    m.port_words.assign(n, 0);
    m.port_rate.assign(n, 0.0);

    const Cycle end = cfg.sim_cycles();
    const Cycle warmup = std::min(warmup_cycles(cfg), end);
    m.window_begin = warmup;
    m.window_end = end;

    std::vector<std::deque<MemoryRequest>> backlog(2 * static_cast<std::size_t>(n));
    std::size_t backlog_size = 0;
    std::size_t next_req = 0;
    std::vector<std::uint64_t> push_allowed(n, 0);
    std::vector<std::uint64_t> push_cursor(n, 0);
    std::vector<Cycle> first_delivery(n, kNever);
    std::vector<std::uint64_t> window_words(n, 0);

    const Cycle deadlock_limit = static_cast<Cycle>(n) * cfg.max_burst_len() * 4;
    Cycle last_progress = 0;

    for (Cycle t = 0;; ++t) {
        bool progress = false;

        if (!options.replay) {
            while (next_req < workload.requests.size() && workload.requests[next_req].issue <= t) {
                const MemoryRequest& r = workload.requests[next_req].req;
                const std::size_t slot = r.dir == Direction::Read ? r.port : n + r.port;
                backlog.at(slot).push_back(r);
                ++backlog_size;
                if (r.dir == Direction::Write) push_allowed[r.port] += static_cast<std::uint64_t>(r.burst_len) * n;
                ++next_req;
            }
            if (backlog_size) {
                for (auto& q : backlog) {
                    while (!q.empty() && arbiter.submit_request(q.front())) {
                        q.pop_front();
                        --backlog_size;
                    }
                }
            }
            if (arbiter.arbiter_step(t, *net, dram)) {
                ++m.grants;
                progress = true;
            }
        }

        if (dram.dram_step(t, *net)) {
            progress = true;
            if (t >= warmup && t < end) ++m.window_lines;
        } else if (dram.awaiting_line(t)) {
            progress = true;
        }

        net->step(t);

        for (unsigned p = 0; p < n_read; ++p) {
            if (auto w = net->pop_read_word(p, t)) {
                result.delivered[p].push_back(*w);
                ++m.port_words[p];
                if (first_delivery[p] == kNever) first_delivery[p] = t;
                if (t >= warmup && t < end) ++window_words[p];
                progress = true;
            }
        }
        for (unsigned p = 0; p < n_write; ++p) {
            if (push_cursor[p] < push_allowed[p] &&
                net->push_write_word(p, workload.write_data[p][push_cursor[p]], t)) {
                ++push_cursor[p];
                ++m.words_written;
                progress = true;
            }
        }

        bool pushes_done = true;
        for (unsigned p = 0; p < n_write; ++p) pushes_done = pushes_done && push_cursor[p] == push_allowed[p];
        const bool pending = backlog_size || !arbiter.idle() || !dram.idle() || !net->empty() || !pushes_done;
        const bool finished = !pending && (options.replay || next_req == workload.requests.size());
        if (finished && t + 1 >= end) {
            m.cycles = t + 1;
            break;
        }
        if (progress || !pending) {
            last_progress = t;
        } else if (t - last_progress > deadlock_limit) {
            throw SimDeadlock("no progress for " + std::to_string(t - last_progress) + " cycles at cycle " +
                              std::to_string(t) + " on the " + to_string(kind) + " network");
        }
    }

    m.lines_transferred = dram.lines_transferred();
    m.stalls = dram.stalls();
    if (end > warmup) m.bus_util = static_cast<double>(m.window_lines) / static_cast<double>(end - warmup);
    for (unsigned p = 0; p < n; ++p) {
        m.words_delivered += m.port_words[p];
        if (first_delivery[p] == kNever) continue;
        const Cycle begin = std::max(warmup, first_delivery[p]);
        if (end > begin) m.port_rate[p] = static_cast<double>(window_words[p]) / static_cast<double>(end - begin);
    }

    result.read_timing.resize(n);
    double lat_sum = 0.0;
    Cycle lat_min = std::numeric_limits<Cycle>::max();
    Cycle lat_max = 0;
    for (unsigned p = 0; p < n_read; ++p) {
        result.read_timing[p] = net->read_timing(p);
        for (const ReadLineTiming& lt : result.read_timing[p]) {
            if (lt.first_word == kNever) continue;
            const Cycle lat = lt.first_word - lt.arrival;
            lat_sum += static_cast<double>(lat);
            lat_min = std::min(lat_min, lat);
            lat_max = std::max(lat_max, lat);
            ++m.lines_measured;
        }
    }
    if (m.lines_measured) {
        m.first_word_lat_mean = lat_sum / static_cast<double>(m.lines_measured);
        m.first_word_lat_min = lat_min;
        m.first_word_lat_max = lat_max;
    }

    result.storage = dram.storage();
    result.emissions = dram.read_emissions();
    if (medusa) {
        result.read_events = medusa->read_events();
        result.write_events = medusa->write_events();
    }
    return result;
}

std::string EquivalenceReport::summary() const {
    if (pass) return "PASS";
    std::ostringstream os;
    os << "FAIL";
    if (first) {
        os << ": " << first->source << " port " << first->port << " position " << first->position << ": "
           << first->detail;
    }
    return os.str();
}

EquivalenceReport compare_to_oracle(const SimResult& run, const OracleResult& oracle, const std::string& name) {
    EquivalenceReport report;
    auto fail = [&](std::string source, unsigned port, std::uint64_t pos, std::string detail) {
        report.pass = false;
        report.first = Divergence{std::move(source), port, pos, std::move(detail)};
        return report;
    };

    const std::size_t ports = std::max(run.delivered.size(), oracle.delivered.size());
    for (std::size_t p = 0; p < ports; ++p) {
        static const std::vector<Word> none;
        const auto& got = p < run.delivered.size() ? run.delivered[p] : none;
        const auto& want = p < oracle.delivered.size() ? oracle.delivered[p] : none;
        const std::size_t common = std::min(got.size(), want.size());
        for (std::size_t i = 0; i < common; ++i) {
            if (!(got[i] == want[i])) {
                return fail(name, static_cast<unsigned>(p), i,
                            "expected " + describe(want[i]) + ", got " + describe(got[i]));
            }
        }
        if (got.size() != want.size()) {
            return fail(name, static_cast<unsigned>(p), common,
                        "expected " + std::to_string(want.size()) + " words, got " + std::to_string(got.size()));
        }
    }

    auto a = run.storage.begin();
    auto b = oracle.storage.begin();
    while (a != run.storage.end() || b != oracle.storage.end()) {
        if (a == run.storage.end() || (b != oracle.storage.end() && b->first < a->first)) {
            return fail(name + " storage", 0, b->first, "line never written");
        }
        if (b == oracle.storage.end() || a->first < b->first) {
            return fail(name + " storage", 0, a->first, "unexpected write");
        }
        if (!(a->second == b->second)) {
            for (std::size_t i = 0; i < std::min(a->second.size(), b->second.size()); ++i) {
                if (!(a->second.words[i] == b->second.words[i])) {
                    const unsigned port = b->second.words[i].tag ? b->second.words[i].tag->port : 0;
                    return fail(name + " storage", port, a->first,
                                "word " + std::to_string(i) + " expected " + describe(b->second.words[i]) +
                                    ", got " + describe(a->second.words[i]));
                }
            }
            return fail(name + " storage", 0, a->first, "line length differs");
        }
        ++a;
        ++b;
    }
    return report;
}

EquivalenceReport check_equivalence(const SimResult& a, const SimResult& b, const OracleResult& oracle) {
    EquivalenceReport ra = compare_to_oracle(a, oracle, to_string(a.network));
    if (!ra.pass) return ra;
    return compare_to_oracle(b, oracle, to_string(b.network));
}

}  // namespace medusa
