#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace medusa {

/// Provenance coordinates of a word: destination (or source) port and the
/// word's index within its line.
struct Tag {
    std::uint16_t port = 0;
    std::uint16_t index = 0;

    friend bool operator==(const Tag&, const Tag&) = default;
};

/// One narrow-port data unit. `value` holds the low w_acc bits of payload.
struct Word {
    std::uint64_t value = 0;
    std::optional<Tag> tag;

    friend bool operator==(const Word&, const Word&) = default;
};

/// One full-width memory line: exactly N words, word y at position y.
struct Line {
    std::vector<Word> words;

    std::size_t size() const noexcept { return words.size(); }
    friend bool operator==(const Line&, const Line&) = default;
};

/// Mask keeping the low `bits` bits of a payload (bits in 1..64).
constexpr std::uint64_t payload_mask(unsigned bits) noexcept {
    return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

/// Stamps every word of `line` with (port, position) provenance.
inline void retag(Line& line, std::uint16_t port) {
    for (std::size_t i = 0; i < line.words.size(); ++i) {
        line.words[i].tag = Tag{port, static_cast<std::uint16_t>(i)};
    }
}

}  // namespace medusa
