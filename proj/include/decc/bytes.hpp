#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace decc {

using Bytes = std::vector<uint8_t>;

std::string to_hex(std::span<const uint8_t> data);
Bytes from_hex(std::string_view hex);  // Parse error on odd length / bad digit

// Bit sequence with exact length tracking. Bits derived from bytes are
// MSB-first; no implicit padding anywhere.
class BitString {
public:
    BitString() = default;

    static BitString from_bytes(std::span<const uint8_t> data);

    // Packs back into bytes; length must be a multiple of 8 (Framing error).
    Bytes to_bytes() const;

    void reserve(size_t n) { bits_.reserve(n); }
    void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
    void append(const BitString& other);

    bool operator[](size_t i) const { return bits_[i] != 0; }
    size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    bool operator==(const BitString&) const = default;

private:
    std::vector<uint8_t> bits_;  // one entry per bit, each 0 or 1
};

}  // namespace decc
