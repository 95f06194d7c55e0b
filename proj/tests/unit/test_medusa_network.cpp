#include "medusa/medusa_network.hpp"
#include "medusa/errors.hpp"

#include <doctest.h>

#include <deque>
#include <random>

using namespace medusa;

namespace {

ValidatedConfig geometry(unsigned w_line, unsigned w_acc, unsigned burst = 32, unsigned ports = 0) {
    InterconnectConfig c;
    c.w_line = w_line;
    c.w_acc = w_acc;
    c.max_burst_len = burst;
    c.n_read_ports_active = ports ? ports : w_line / w_acc;
    c.n_write_ports_active = ports ? ports : w_line / w_acc;
    return validate_config(c);
}

Line tagged_line(unsigned port, unsigned seq, unsigned n) {
    Line l;
    for (unsigned y = 0; y < n; ++y) {
        l.words.push_back(Word{1000000ull * port + 1000ull * seq + y,
                               Tag{static_cast<std::uint16_t>(port), static_cast<std::uint16_t>(y)}});
    }
    return l;
}

}  // namespace

TEST_CASE("four-lane read schedule from a pre-filled buffer") {
    MedusaNetwork net(geometry(64, 16));
    net.enable_event_log(true);
    for (unsigned p = 0; p < 4; ++p) net.preload_read_line(p, tagged_line(p, 0, 4));
    for (unsigned p = 0; p < 4; ++p) {
        for (unsigned y = 0; y < 4; ++y) {
            CHECK(net.read_bank_word(y, p, 0).tag == Tag{static_cast<std::uint16_t>(p), static_cast<std::uint16_t>(y)});
        }
    }

    for (Cycle c = 0; c < 4; ++c) CHECK(net.read_transpose_step(c) == 4);
    const auto& ev = net.read_events();
    REQUIRE(ev.size() == 4);

    // Word (p, y) read at cycle c satisfies y = (p + c) mod 4.
    const unsigned expect[4][4] = {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}};
    for (unsigned c = 0; c < 4; ++c) {
        CHECK(ev[c].cycle == c);
        CHECK(ev[c].rotation == c);
        REQUIRE(ev[c].moves.size() == 4);
        for (const auto& mv : ev[c].moves) {
            CHECK(mv.word_index == expect[c][mv.port]);
            CHECK(mv.input_bank == mv.word_index);
            CHECK(mv.output_bank == mv.port);
            CHECK(mv.output_addr == (mv.port + c) % 4);
        }
    }
    CHECK(ev[3].rotation == 3);
    for (unsigned p = 0; p < 4; ++p) {
        CHECK(net.read_slots_complete(p) == 1);
        CHECK(net.read_rows_occupied(p) == 0);
        CHECK(net.read_progress(p).words_done == 0);
    }
}

TEST_CASE("a transposed line drains in index order") {
    MedusaNetwork net(geometry(64, 16));
    net.preload_read_line(2, tagged_line(2, 0, 4));
    std::vector<Word> got;
    std::vector<Cycle> when;
    for (Cycle t = 0; t < 12; ++t) {
        net.step(t);
        if (auto w = net.read_port_pop(2, t)) {
            got.push_back(*w);
            when.push_back(t);
        }
    }
    CHECK(got == tagged_line(2, 0, 4).words);
    // Joined at 0, complete at 3, registered output at 5.
    CHECK(when == std::vector<Cycle>{5, 6, 7, 8});
    CHECK(net.empty());
}

TEST_CASE("a partially transposed slot is not readable") {
    MedusaNetwork net(geometry(64, 16));
    net.preload_read_line(0, tagged_line(0, 0, 4));
    for (Cycle t = 0; t < 3; ++t) {
        net.step(t);
        CHECK(net.read_progress(0).words_done == t + 1);
        CHECK_FALSE(net.read_port_pop(0, t).has_value());
    }
    net.step(3);
    CHECK(net.read_slots_complete(0) == 1);
    CHECK_FALSE(net.read_port_pop(0, 3).has_value());
    net.step(4);
    CHECK_FALSE(net.read_port_pop(0, 4).has_value());
    net.step(5);
    CHECK(net.read_port_pop(0, 5).has_value());
}

TEST_CASE("accepted lines land across the banks at the port's tail row") {
    MedusaNetwork net(geometry(64, 16));
    const Line l = tagged_line(2, 0, 4);
    CHECK(net.read_accept_line(2, l, 0));
    net.step(0);
    CHECK(net.read_rows_occupied(2) == 0);
    net.step(1);
    REQUIRE(net.read_rows_occupied(2) == 1);
    for (unsigned y = 0; y < 4; ++y) CHECK(net.read_bank_word(y, 2, 0) == l.words[y]);
    CHECK(net.read_progress(2).tail_row == 1);
    CHECK(net.read_progress(2).head_row == 0);
}

TEST_CASE("full region back-pressures") {
    MedusaNetwork net(geometry(64, 16, 4));
    for (unsigned k = 0; k < 4; ++k) CHECK(net.read_accept_line(1, tagged_line(1, k, 4), 0));
    CHECK_FALSE(net.read_accept_line(1, tagged_line(1, 4, 4), 0));
    CHECK_FALSE(net.can_land_read_burst(1, 1, 1));
}

TEST_CASE("a max-length burst fills rows in order") {
    const unsigned n = 4;
    MedusaNetwork net(geometry(64, 16, 32));
    for (unsigned k = 0; k < 32; ++k) {
        REQUIRE(net.read_accept_line(3, tagged_line(3, k, n), k));
        net.step(k);
    }
    for (Cycle t = 32; t < 40; ++t) net.step(t);
    // Nothing is popped, so at most two lines reach the port-side slots.
    CHECK(net.read_slots_complete(3) == 2);
    CHECK(net.read_rows_occupied(3) == 30);
    for (unsigned k = 0; k < 32; ++k) {
        for (unsigned y = 0; y < n; ++y) CHECK(net.read_bank_word(y, 3, k) == tagged_line(3, k, n).words[y]);
    }
}

TEST_CASE("idle-port latency is N + 3 cycles from arrival to first word") {
    for (unsigned w_line : {32u, 64u, 128u, 512u}) {
        const auto cfg = geometry(w_line, 16);
        const unsigned n = cfg.lanes();
        MedusaNetwork net(cfg);
        const Cycle arrival = 7;
        Cycle first = kNever;
        for (Cycle t = 0; t < 100; ++t) {
            if (t == arrival) REQUIRE(net.read_accept_line(0, tagged_line(0, 0, n), t));
            net.step(t);
            if (net.read_port_pop(0, t) && first == kNever) first = t;
        }
        CHECK(first == arrival + n + 3);
        const auto& timing = net.read_timing(0);
        REQUIRE(timing.size() == 1);
        CHECK(timing[0].arrival == arrival);
        CHECK(timing[0].join == arrival + 2);
        CHECK(timing[0].transposed == arrival + 2 + n - 1);
        CHECK(timing[0].first_word == first);
        CHECK(timing[0].last_word == first + n - 1);
    }
}

TEST_CASE("back-to-back lines stream one word per cycle") {
    const auto cfg = geometry(128, 16, 8);
    const unsigned n = cfg.lanes();
    MedusaNetwork net(cfg);
    std::vector<Word> expect;
    std::vector<Word> got;
    std::vector<Cycle> when;
    unsigned sent = 0;
    for (Cycle t = 0; t < 400; ++t) {
        if (sent < 24 && net.can_land_read_burst(0, 1, t)) {
            const Line l = tagged_line(0, sent, n);
            expect.insert(expect.end(), l.words.begin(), l.words.end());
            REQUIRE(net.read_accept_line(0, l, t));
            ++sent;
        }
        net.step(t);
        if (auto w = net.read_port_pop(0, t)) {
            got.push_back(*w);
            when.push_back(t);
        }
    }
    CHECK(got == expect);
    for (std::size_t i = 1; i < when.size(); ++i) CHECK(when[i] == when[i - 1] + 1);
}

TEST_CASE("write path: a completed slot is assembled N cycles later") {
    const unsigned n = 4;
    MedusaNetwork net(geometry(64, 16));
    net.enable_event_log(true);
    const Line l = tagged_line(0, 0, n);
    Cycle slot_complete = kNever;
    std::optional<Line> popped;
    Cycle popped_at = kNever;
    for (Cycle t = 0; t < 20 && !popped; ++t) {
        net.step(t);
        if (net.write_lines_ready(0, t) == 1) {
            popped = net.write_line_pop(0, t);
            popped_at = t;
        }
        if (t < n) {
            REQUIRE(net.write_port_push(0, l.words[t], t));
            if (t == n - 1) slot_complete = t;
        }
    }
    REQUIRE(popped);
    CHECK(*popped == l);
    // Joined at slot_complete + 1, last word written N - 1 cycles after that.
    CHECK(popped_at == slot_complete + n + 1);
    const auto& ev = net.write_events();
    REQUIRE(ev.size() == n);
    CHECK(ev.back().cycle == slot_complete + n);
    for (const auto& e : ev) {
        REQUIRE(e.moves.size() == 1);
        const auto& mv = e.moves[0];
        const unsigned c = static_cast<unsigned>(e.cycle % n);
        CHECK(mv.word_index == (0 + c) % n);
        CHECK(mv.output_bank == mv.word_index);
        // Lane q reaches bank q belonging to port (q - c) mod N.
        CHECK((mv.output_bank + n - c) % n == mv.port);
        CHECK(e.rotation == (n - c) % n);
    }
}

TEST_CASE("write push back-pressure and idle steps") {
    const unsigned n = 4;
    MedusaNetwork net(geometry(64, 16));
    for (unsigned i = 0; i < 2 * n; ++i) CHECK(net.write_port_push(1, Word{i, std::nullopt}, 0));
    CHECK_FALSE(net.write_port_push(1, Word{99, std::nullopt}, 0));
    MedusaNetwork idle(geometry(64, 16));
    CHECK(idle.write_transpose_step(0) == 0);
    CHECK(idle.read_transpose_step(0) == 0);
    CHECK_FALSE(idle.write_line_pop(0, 5).has_value());
    CHECK_FALSE(idle.read_port_pop(0, 5).has_value());
}

TEST_CASE("interleaved writers stay in their own regions") {
    const unsigned n = 4;
    MedusaNetwork net(geometry(64, 16));
    const Line a0 = tagged_line(0, 0, n), a1 = tagged_line(0, 1, n);
    const Line b0 = tagged_line(3, 0, n), b1 = tagged_line(3, 1, n);
    std::vector<Word> a, b;
    for (const Line* l : {&a0, &a1}) a.insert(a.end(), l->words.begin(), l->words.end());
    for (const Line* l : {&b0, &b1}) b.insert(b.end(), l->words.begin(), l->words.end());
    std::vector<Line> out_a, out_b;
    for (Cycle t = 0; t < 40; ++t) {
        net.step(t);
        if (auto l = net.write_line_pop(0, t)) out_a.push_back(*l);
        if (auto l = net.write_line_pop(3, t)) out_b.push_back(*l);
        if (t < a.size()) REQUIRE(net.write_port_push(0, a[t], t));
        if (t >= 1 && t - 1 < b.size()) REQUIRE(net.write_port_push(3, b[t - 1], t));
    }
    CHECK(out_a == std::vector<Line>{a0, a1});
    CHECK(out_b == std::vector<Line>{b0, b1});
}

TEST_CASE("write burst pops in FIFO order") {
    const unsigned n = 4;
    MedusaNetwork net(geometry(64, 16, 32));
    std::deque<Word> pending;
    for (unsigned k = 0; k < 32; ++k) {
        for (const Word& w : tagged_line(0, k, n).words) pending.push_back(w);
    }
    for (Cycle t = 0; t < 200; ++t) {
        net.step(t);
        if (!pending.empty() && net.write_port_push(0, pending.front(), t)) pending.pop_front();
    }
    REQUIRE(net.write_lines_ready(0, 200) == 32);
    net.reserve_write(0, 32);
    CHECK(net.write_lines_ready(0, 200) == 0);
    for (unsigned k = 0; k < 32; ++k) CHECK(net.write_line_pop(0, 200 + k) == tagged_line(0, k, n));
    CHECK(net.empty());
}

TEST_CASE("all writers busy: one assembled line per cycle") {
    const auto cfg = geometry(128, 16, 4);
    const unsigned n = cfg.lanes();
    MedusaNetwork net(cfg);
    std::vector<unsigned> pushed(n, 0);
    // Window length is a whole number of line periods, as all ports run in phase.
    const Cycle begin = 100, end = begin + 12 * n;
    unsigned lines_in_window = 0;
    for (Cycle t = 0; t < 300; ++t) {
        net.step(t);
        for (unsigned p = 0; p < n; ++p) {
            while (auto l = net.write_line_pop(p, t)) {
                if (t >= begin && t < end) ++lines_in_window;
            }
            if (net.write_port_push(p, Word{pushed[p], std::nullopt}, t)) ++pushed[p];
        }
    }
    CHECK(lines_in_window == end - begin);
}

TEST_CASE("random joins never collide and preserve per-port order") {
    std::mt19937_64 rng(2024);
    for (unsigned w_line : {32u, 64u, 256u, 1024u}) {
        const auto cfg = geometry(w_line, 16, 3);
        const unsigned n = cfg.lanes();
        MedusaNetwork net(cfg);
        std::vector<std::vector<Word>> sent(n), got(n);
        std::vector<std::deque<Word>> to_write(n);
        std::vector<std::vector<Line>> written_in(n), written_out(n);
        std::vector<unsigned> seq(n, 0);
        for (Cycle t = 0; t < 3000; ++t) {
            // One DRAM line per cycle at most, to a random port, when it fits.
            const unsigned p = static_cast<unsigned>(rng() % n);
            if (t < 2000 && rng() % 3 == 0 && net.can_land_read_burst(p, 1, t)) {
                const Line l = tagged_line(p, seq[p]++, n);
                sent[p].insert(sent[p].end(), l.words.begin(), l.words.end());
                REQUIRE(net.read_accept_line(p, l, t));
            }
            if (t < 2000 && rng() % 7 == 0) {
                const unsigned q = static_cast<unsigned>(rng() % n);
                const Line l = tagged_line(q, 500 + static_cast<unsigned>(written_in[q].size()), n);
                written_in[q].push_back(l);
                for (const Word& w : l.words) to_write[q].push_back(w);
            }
            REQUIRE_NOTHROW(net.step(t));
            for (unsigned q = 0; q < n; ++q) {
                CHECK(net.read_progress(q).words_done < n);
                CHECK(net.read_rows_occupied(q) <= net.rows_per_port());
                if (rng() % 4 != 0) {
                    if (auto w = net.read_port_pop(q, t)) got[q].push_back(*w);
                }
                if (rng() % 5 == 0) {
                    if (auto l = net.write_line_pop(q, t)) written_out[q].push_back(*l);
                }
                if (!to_write[q].empty() && net.write_port_push(q, to_write[q].front(), t)) to_write[q].pop_front();
            }
        }
        CHECK(net.empty());
        CHECK(got == sent);
        CHECK(written_out == written_in);
    }
}

TEST_CASE("inactive ports are rejected") {
    MedusaNetwork net(geometry(64, 16, 4, 3));
    CHECK_THROWS_AS(net.read_accept_line(3, tagged_line(3, 0, 4), 0), MalformedRequest);
    CHECK_THROWS_AS(net.write_port_push(3, Word{}, 0), MalformedRequest);
    CHECK_THROWS_AS(net.read_accept_line(0, tagged_line(0, 0, 2), 0), InvalidGeometry);
}
