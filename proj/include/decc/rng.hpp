#pragma once

#include <random>
#include <span>

#include "decc/bigint.hpp"
#include "decc/bytes.hpp"

namespace decc {

// Randomness source for key generation and per-block scalars. A handle is
// not synchronized; give each thread its own or serialize access.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    virtual void random_bytes(std::span<uint8_t> out) = 0;

    // Uniform scalar in [1, n-1] by masked rejection sampling.
    Int random_scalar(const Int& n);
};

// OS-entropy source; failures surface as Entropy errors.
class SystemRandom final : public RandomSource {
public:
    void random_bytes(std::span<uint8_t> out) override;

private:
    std::random_device dev_;
};

// Deterministic stream for tests and golden files:
// block_i = SHA256(seed || big-endian-64(i)), i = 0, 1, ...
class DeterministicRandom final : public RandomSource {
public:
    explicit DeterministicRandom(Bytes seed);

    void random_bytes(std::span<uint8_t> out) override;

private:
    Bytes seed_;
    uint64_t counter_ = 0;
    Bytes buffer_;
    size_t pos_ = 0;
};

}  // namespace decc
