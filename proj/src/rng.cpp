#include "decc/rng.hpp"

#include "decc/digest.hpp"
#include "decc/errors.hpp"

namespace decc {

Int RandomSource::random_scalar(const Int& n) {
    if (n < 2) fail(ErrorKind::Usage, "scalar range upper bound must be >= 2");
    size_t bits = bit_length(n);
    size_t nbytes = (bits + 7) / 8;
    uint8_t topmask = static_cast<uint8_t>(0xFF >> (8 * nbytes - bits));

    Bytes buf(nbytes);
    for (;;) {
        random_bytes(buf);
        buf[0] &= topmask;
        Int candidate = int_from_bytes_be(buf);
        if (candidate >= 1 && candidate <= n - 1) return candidate;
    }
}

void SystemRandom::random_bytes(std::span<uint8_t> out) {
    try {
        size_t i = 0;
        while (i < out.size()) {
            unsigned int word = dev_();
            for (int b = 0; b < 4 && i < out.size(); ++b, ++i)
                out[i] = static_cast<uint8_t>(word >> (8 * b));
        }
    } catch (const std::exception& e) {
        fail(ErrorKind::Entropy,
             std::string("system entropy source failed: ") + e.what());
    }
}

DeterministicRandom::DeterministicRandom(Bytes seed) : seed_(std::move(seed)) {}

void DeterministicRandom::random_bytes(std::span<uint8_t> out) {
    for (size_t i = 0; i < out.size(); ++i) {
        if (pos_ == buffer_.size()) {
            Bytes block = seed_;
            for (int shift = 56; shift >= 0; shift -= 8)
                block.push_back(static_cast<uint8_t>(counter_ >> shift));
            Digest32 digest = sha256(block);
            buffer_.assign(digest.begin(), digest.end());
            pos_ = 0;
            ++counter_;
        }
        out[i] = buffer_[pos_++];
    }
}

}  // namespace decc
