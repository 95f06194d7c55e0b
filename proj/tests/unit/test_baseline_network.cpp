#include "medusa/baseline_network.hpp"
#include "medusa/errors.hpp"
#include "medusa/medusa_network.hpp"

#include <doctest.h>

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

TEST_CASE("read FIFO capacity and demux rate") {
    BaselineNetwork net(geometry(64, 16, 4));
    CHECK(net.fifo_capacity() == 4);
    CHECK(net.read_push_line(0, tagged_line(0, 0, 4), 0));
    CHECK(net.read_fifo_size(0) == 1);
    // Only one line crosses the demux per cycle.
    CHECK_FALSE(net.read_push_line(1, tagged_line(1, 0, 4), 0));
    for (unsigned k = 1; k < 4; ++k) CHECK(net.read_push_line(0, tagged_line(0, k, 4), k));
    CHECK_FALSE(net.read_push_line(0, tagged_line(0, 4, 4), 4));
    CHECK_FALSE(net.can_land_read_burst(0, 1, 5));
    CHECK(net.can_land_read_burst(1, 4, 5));
    net.reserve_read(1, 3);
    CHECK_FALSE(net.can_land_read_burst(1, 2, 5));
}

TEST_CASE("32-line burst into an empty FIFO") {
    BaselineNetwork net(geometry(64, 16, 32));
    for (unsigned k = 0; k < 32; ++k) {
        CHECK(net.read_push_line(2, tagged_line(2, k, 4), k));
        net.step(k);
    }
    // Staging and converter hold one line each; the rest wait in the FIFO.
    CHECK(net.read_fifo_size(2) == 30);
}

TEST_CASE("read drain order and idle latency") {
    BaselineNetwork net(geometry(64, 16));
    CHECK_FALSE(net.read_pop_word(0, 0).has_value());
    CHECK(net.read_push_line(0, tagged_line(0, 0, 4), 0));
    CHECK(net.read_push_line(0, tagged_line(0, 1, 4), 1));
    std::vector<Word> got;
    std::vector<Cycle> when;
    for (Cycle t = 0; t < 20; ++t) {
        net.step(t);
        if (auto w = net.read_pop_word(0, t)) {
            got.push_back(*w);
            when.push_back(t);
        }
    }
    std::vector<Word> expect = tagged_line(0, 0, 4).words;
    for (const Word& w : tagged_line(0, 1, 4).words) expect.push_back(w);
    CHECK(got == expect);
    // FIFO (1) + handoff (1) + output register (1), then one word per cycle.
    CHECK(when == std::vector<Cycle>{3, 4, 5, 6, 7, 8, 9, 10});
    const auto& timing = net.read_timing(0);
    REQUIRE(timing.size() == 2);
    CHECK(timing[0].first_word == 3);
    CHECK(timing[0].last_word == 6);
    CHECK(timing[1].first_word == 7);
    CHECK(net.empty());
}

TEST_CASE("write converter assembles lines into the FIFO") {
    BaselineNetwork net(geometry(64, 16, 2));
    const Line l = tagged_line(1, 0, 4);
    for (unsigned i = 0; i < 4; ++i) CHECK(net.write_push_word(1, l.words[i], 0));
    CHECK_FALSE(net.write_push_word(1, l.words[0], 0));
    CHECK(net.write_lines_ready(1, 1) == 0);
    net.step(1);
    CHECK(net.write_fifo_size(1) == 1);
    CHECK(net.write_lines_ready(1, 1) == 0);
    CHECK(net.write_lines_ready(1, 2) == 1);
    CHECK_FALSE(net.write_pop_line(1, 1).has_value());
    CHECK(net.write_pop_line(1, 2) == l);
    CHECK_FALSE(net.write_pop_line(1, 3).has_value());
}

TEST_CASE("write back-pressure when FIFO and converter are full") {
    BaselineNetwork net(geometry(64, 16, 2));
    unsigned accepted = 0;
    for (Cycle t = 0; t < 40; ++t) {
        net.step(t);
        if (net.write_push_word(0, Word{accepted, std::nullopt}, t)) ++accepted;
    }
    CHECK(net.write_fifo_size(0) == 2);
    CHECK(accepted == 3 * 4);
}

TEST_CASE("interleaved writers do not mix") {
    const unsigned n = 4;
    BaselineNetwork net(geometry(64, 16));
    const Line a = tagged_line(0, 0, n), b = tagged_line(2, 0, n);
    for (Cycle t = 0; t < 4; ++t) {
        net.step(t);
        REQUIRE(net.write_push_word(0, a.words[t], t));
        REQUIRE(net.write_push_word(2, b.words[t], t));
    }
    net.step(4);
    CHECK(net.write_pop_line(2, 5) == b);
    CHECK(net.write_pop_line(0, 5) == a);
}

TEST_CASE("write bursts stream one line per cycle in grant order") {
    const unsigned n = 4;
    BaselineNetwork net(geometry(64, 16, 32));
    std::vector<unsigned> pushed(2, 0);
    for (Cycle t = 0; t < 400; ++t) {
        net.step(t);
        for (unsigned p = 0; p < 2; ++p) {
            const unsigned k = pushed[p] / n;
            if (k < 32 && net.write_push_word(p, tagged_line(p, k, n).words[pushed[p] % n], t)) ++pushed[p];
        }
    }
    REQUIRE(net.write_lines_ready(0, 400) == 32);
    REQUIRE(net.write_lines_ready(1, 400) == 32);
    // Alternating two-line grants, then the rest of port 0 back to back.
    Cycle t = 400;
    for (unsigned k = 0; k < 2; ++k) CHECK(net.write_pop_line(0, t++) == tagged_line(0, k, n));
    for (unsigned k = 0; k < 2; ++k) CHECK(net.write_pop_line(1, t++) == tagged_line(1, k, n));
    for (unsigned k = 2; k < 32; ++k) CHECK(net.write_pop_line(0, t++) == tagged_line(0, k, n));
    CHECK_FALSE(net.write_pop_line(0, t).has_value());
}

TEST_CASE("both networks deliver the same words, Medusa exactly N cycles later per line") {
    std::mt19937_64 rng(99);
    for (unsigned w_line : {32u, 64u, 128u, 512u}) {
        const auto cfg = geometry(w_line, 16, 4);
        const unsigned n = cfg.lanes();
        BaselineNetwork base(cfg);
        MedusaNetwork med(cfg);
        std::vector<std::vector<Word>> got_b(n), got_m(n);
        std::vector<unsigned> seq(n, 0);
        for (Cycle t = 0; t < 4000; ++t) {
            const unsigned p = static_cast<unsigned>(rng() % n);
            if (t < 3000 && rng() % 2 == 0 && base.can_land_read_burst(p, 1, t) && med.can_land_read_burst(p, 1, t)) {
                const Line l = tagged_line(p, seq[p]++, n);
                REQUIRE(base.read_push_line(p, l, t));
                REQUIRE(med.read_accept_line(p, l, t));
            }
            base.step(t);
            med.step(t);
            for (unsigned q = 0; q < n; ++q) {
                if (auto w = base.read_pop_word(q, t)) got_b[q].push_back(*w);
                if (auto w = med.read_port_pop(q, t)) got_m[q].push_back(*w);
            }
        }
        CHECK(got_b == got_m);
        for (unsigned q = 0; q < n; ++q) {
            const auto& tb = base.read_timing(q);
            const auto& tm = med.read_timing(q);
            REQUIRE(tb.size() == tm.size());
            for (std::size_t i = 0; i < tb.size(); ++i) {
                REQUIRE(tb[i].arrival == tm[i].arrival);
                CHECK(tm[i].first_word - tb[i].first_word == n);
                CHECK(tm[i].last_word - tb[i].last_word == n);
            }
        }
    }
}

TEST_CASE("baseline port checks") {
    BaselineNetwork net(geometry(64, 16, 4, 2));
    CHECK_THROWS_AS(net.read_push_line(2, tagged_line(2, 0, 4), 0), MalformedRequest);
    CHECK_THROWS_AS(net.write_push_word(3, Word{}, 0), MalformedRequest);
    CHECK_THROWS_AS(net.read_push_line(0, tagged_line(0, 0, 8), 0), InvalidGeometry);
}
