#pragma once

// Analytic FPGA cost model: 2:1 one-bit mux counts and 18-Kbit BRAM counts
// for both interconnect designs.

#include "medusa/config.hpp"
#include "medusa/memory_system.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace medusa {

/// Demux / N-to-1 mux cost of the conventional design, per direction.
std::uint64_t baseline_mux_cost(std::uint64_t w_line, std::uint64_t n);
/// Rotation unit cost: log2(N) stages of W_line one-bit 2:1 muxes.
std::uint64_t medusa_mux_cost(std::uint64_t w_line, std::uint64_t n);

struct BramShape {
    unsigned width;
    unsigned depth;
};

/// Aspect ratios of one 18-Kbit block, narrowest-deep last.
inline constexpr BramShape kBram18Shapes[] = {
    {36, 512}, {18, 1024}, {9, 2048}, {4, 4096}, {2, 8192}, {1, 16384},
};

/// Blocks needed for a width x depth memory, using the widest shape that
/// still covers `depth` in a single block (or the deepest shape otherwise).
std::uint64_t fifo_bram_cost(std::uint64_t width, std::uint64_t depth);

enum class Design { Baseline, Medusa };
const char* to_string(Design d);

struct CostReport {
    Design design = Design::Baseline;
    Direction direction = Direction::Read;
    unsigned w_line = 0;
    unsigned w_acc = 0;
    unsigned n = 0;
    unsigned burst = 0;
    std::uint64_t mux2_count = 0;
    std::uint64_t bram18_count = 0;
    std::string notes;
};

/// Baseline read, baseline write, Medusa read, Medusa write.
std::vector<CostReport> design_cost_report(const ValidatedConfig& cfg);

std::uint64_t total_bram(const std::vector<CostReport>& reports, Design d);

/// `design,direction,w_line,w_acc,n,burst,mux2,bram18` plus one row per report.
void write_cost_csv(std::ostream& out, const std::vector<CostReport>& reports, bool header = true);

}  // namespace medusa
