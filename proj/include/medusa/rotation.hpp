#pragma once

// Rotation unit: N lanes of W_acc bits, rotated left by a whole number of
// lanes. rotate_left() is the behavioral form used by the datapath models;
// BarrelShifter evaluates the same function through log2(N) stages of 2:1
// muxes so the structure itself can be checked and costed.

#include "medusa/config.hpp"
#include "medusa/errors.hpp"
#include "medusa/word.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace medusa {

using LaneVector = std::vector<Word>;

/// Per-stage enables; bits[l] turns on the rotate-by-2^l stage.
struct StageControls {
    std::vector<bool> bits;

    friend bool operator==(const StageControls&, const StageControls&) = default;
};

namespace detail {

inline void check_amount(std::size_t lanes, std::size_t amount) {
    if (amount >= lanes) {
        throw AmountOutOfRange("rotation amount " + std::to_string(amount) +
                               " out of range for " + std::to_string(lanes) + " lanes");
    }
}

}  // namespace detail

/// out[p] = in[(p + amount) mod N]. `out` must not alias `in`.
template <typename T>
void rotate_left_into(std::span<const T> in, std::size_t amount, std::span<T> out) {
    const std::size_t n = in.size();
    detail::check_amount(n, amount);
    if (out.size() != n) throw AmountOutOfRange("rotation output has wrong lane count");
    const std::size_t head = n - amount;
    for (std::size_t p = 0; p < head; ++p) out[p] = in[p + amount];
    for (std::size_t p = head; p < n; ++p) out[p] = in[p - head];
}

template <typename T>
std::vector<T> rotate_left(std::span<const T> in, std::size_t amount) {
    std::vector<T> out(in.size());
    rotate_left_into<T>(in, amount, out);
    return out;
}

template <typename T>
std::vector<T> rotate_left(const std::vector<T>& in, std::size_t amount) {
    return rotate_left<T>(std::span<const T>(in), amount);
}

/// Binary encoding of `amount` across log2(lanes) stages. `lanes` must be a
/// power of two.
StageControls stage_controls(unsigned lanes, unsigned amount);

/// Stage-by-stage barrel shifter for a power-of-two lane count.
class BarrelShifter {
public:
    /// One 2:1 mux, W_acc bits wide: output lane `out` takes `pass` when the
    /// stage is disabled and `rotated` when enabled.
    struct Mux {
        unsigned out;
        unsigned pass;
        unsigned rotated;
    };

    struct Stage {
        unsigned shift;  // 2^l lanes
        std::vector<Mux> muxes;
    };

    explicit BarrelShifter(unsigned lanes);

    unsigned lanes() const noexcept { return lanes_; }
    const std::vector<Stage>& stages() const noexcept { return stages_; }

    /// Number of 2:1 one-bit muxes in the structure for W_acc-bit lanes.
    std::uint64_t mux2_count(unsigned w_acc) const noexcept;

    template <typename T>
    std::vector<T> apply(std::span<const T> in, const StageControls& controls) const {
        if (in.size() != lanes_) {
            throw AmountOutOfRange("lane vector has " + std::to_string(in.size()) +
                                   " lanes, shifter has " + std::to_string(lanes_));
        }
        if (controls.bits.size() != stages_.size()) {
            throw AmountOutOfRange("stage controls have " + std::to_string(controls.bits.size()) +
                                   " bits, shifter has " + std::to_string(stages_.size()) +
                                   " stages");
        }
        std::vector<T> cur(in.begin(), in.end());
        std::vector<T> next(lanes_);
        for (std::size_t l = 0; l < stages_.size(); ++l) {
            const bool enabled = controls.bits[l];
            for (const Mux& m : stages_[l].muxes) {
                next[m.out] = enabled ? cur[m.rotated] : cur[m.pass];
            }
            cur.swap(next);
        }
        return cur;
    }

private:
    unsigned lanes_;
    std::vector<Stage> stages_;
};

template <typename T>
std::vector<T> rotate_via_stages(std::span<const T> in, const StageControls& controls) {
    if (!is_power_of_two(in.size())) {
        throw AmountOutOfRange("stage rotation needs a power-of-two lane count");
    }
    return BarrelShifter(static_cast<unsigned>(in.size())).apply(in, controls);
}

template <typename T>
std::vector<T> rotate_via_stages(const std::vector<T>& in, const StageControls& controls) {
    return rotate_via_stages<T>(std::span<const T>(in), controls);
}

}  // namespace medusa
