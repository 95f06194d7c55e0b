#include "medusa/rotation.hpp"

namespace medusa {

StageControls stage_controls(unsigned lanes, unsigned amount) {
    if (!is_power_of_two(lanes)) {
        throw AmountOutOfRange("lane count " + std::to_string(lanes) + " is not a power of two");
    }
    detail::check_amount(lanes, amount);
    StageControls c;
    const unsigned stages = log2_exact(lanes);
    c.bits.resize(stages);
    for (unsigned l = 0; l < stages; ++l) c.bits[l] = ((amount >> l) & 1u) != 0;
    return c;
}

BarrelShifter::BarrelShifter(unsigned lanes) : lanes_(lanes) {
    if (!is_power_of_two(lanes)) {
        throw AmountOutOfRange("lane count " + std::to_string(lanes) + " is not a power of two");
    }
    const unsigned n_stages = log2_exact(lanes);
    stages_.reserve(n_stages);
    for (unsigned l = 0; l < n_stages; ++l) {
        Stage s;
        s.shift = 1u << l;
        s.muxes.reserve(lanes);
        for (unsigned p = 0; p < lanes; ++p) {
            s.muxes.push_back(Mux{p, p, (p + s.shift) % lanes});
        }
        stages_.push_back(std::move(s));
    }
}

std::uint64_t BarrelShifter::mux2_count(unsigned w_acc) const noexcept {
    std::uint64_t muxes = 0;
    for (const Stage& s : stages_) muxes += s.muxes.size();
    return muxes * w_acc;
}

}  // namespace medusa
