#include "decc/bytes.hpp"

#include "decc/errors.hpp"

namespace decc {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string to_hex(std::span<const uint8_t> data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0)
        fail(ErrorKind::Parse, "hex string has odd length");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_digit(hex[i]);
        int lo = hex_digit(hex[i + 1]);
        if (hi < 0 || lo < 0)
            fail(ErrorKind::Parse,
                 "invalid hex digit at offset " + std::to_string(i));
        out.push_back(static_cast<uint8_t>(hi << 4 | lo));
    }
    return out;
}

BitString BitString::from_bytes(std::span<const uint8_t> data) {
    BitString bs;
    bs.bits_.reserve(data.size() * 8);
    for (uint8_t b : data)
        for (int i = 7; i >= 0; --i)
            bs.bits_.push_back((b >> i) & 1);
    return bs;
}

Bytes BitString::to_bytes() const {
    if (bits_.size() % 8 != 0)
        fail(ErrorKind::Framing, "bit string length " +
                                     std::to_string(bits_.size()) +
                                     " is not a multiple of 8");
    Bytes out(bits_.size() / 8, 0);
    for (size_t i = 0; i < bits_.size(); ++i)
        out[i / 8] = static_cast<uint8_t>(out[i / 8] << 1 | bits_[i]);
    return out;
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

}  // namespace decc
