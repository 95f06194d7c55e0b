#include "medusa/resource_model.hpp"

#include "medusa/errors.hpp"

#include <ostream>
#include <string>

namespace medusa {
namespace {

void check_ports(std::uint64_t n) {
    if (!is_power_of_two(n)) {
        throw InvalidGeometry("port count " + std::to_string(n) + " is not a power of two");
    }
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

std::uint64_t baseline_mux_cost(std::uint64_t w_line, std::uint64_t n) {
    check_ports(n);
    return w_line * (n - 1);
}

std::uint64_t medusa_mux_cost(std::uint64_t w_line, std::uint64_t n) {
    check_ports(n);
    return w_line * log2_exact(n);
}

std::uint64_t fifo_bram_cost(std::uint64_t width, std::uint64_t depth) {
    if (width == 0 || depth == 0) throw InvalidGeometry("memory width and depth must be positive");
    BramShape shape = kBram18Shapes[std::size(kBram18Shapes) - 1];
    for (const BramShape& s : kBram18Shapes) {
        if (s.depth >= depth) {
            shape = s;
            break;
        }
    }
    return ceil_div(width, shape.width) * ceil_div(depth, shape.depth);
}

const char* to_string(Design d) { return d == Design::Baseline ? "baseline" : "medusa"; }

std::vector<CostReport> design_cost_report(const ValidatedConfig& cfg) {
    const unsigned n = cfg.lanes();
    const unsigned burst = cfg.max_burst_len();
    std::vector<CostReport> out;
    for (Direction dir : {Direction::Read, Direction::Write}) {
        CostReport r{Design::Baseline, dir, cfg.w_line(), cfg.w_acc(), n, burst,
                     baseline_mux_cost(cfg.w_line(), n),
                     n * fifo_bram_cost(cfg.w_line(), burst),
                     std::to_string(n) + " FIFOs of " + std::to_string(burst) + "x" + std::to_string(cfg.w_line())};
        out.push_back(std::move(r));
    }
    for (Direction dir : {Direction::Read, Direction::Write}) {
        const std::uint64_t depth = static_cast<std::uint64_t>(burst) * n;
        CostReport r{Design::Medusa, dir, cfg.w_line(), cfg.w_acc(), n, burst,
                     medusa_mux_cost(cfg.w_line(), n),
                     n * fifo_bram_cost(cfg.w_acc(), depth),
                     std::to_string(n) + " banks of " + std::to_string(depth) + "x" + std::to_string(cfg.w_acc())};
        out.push_back(std::move(r));
    }
    return out;
}

std::uint64_t total_bram(const std::vector<CostReport>& reports, Design d) {
    std::uint64_t total = 0;
    for (const CostReport& r : reports) {
        if (r.design == d) total += r.bram18_count;
    }
    return total;
}

void write_cost_csv(std::ostream& out, const std::vector<CostReport>& reports, bool header) {
    if (header) out << "design,direction,w_line,w_acc,n,burst,mux2,bram18\n";
    for (const CostReport& r : reports) {
        out << to_string(r.design) << ',' << (r.direction == Direction::Read ? "read" : "write") << ','
            << r.w_line << ',' << r.w_acc << ',' << r.n << ',' << r.burst << ',' << r.mux2_count << ','
            << r.bram18_count << '\n';
    }
}

}  // namespace medusa
