#pragma once

#include <optional>
#include <string_view>

#include "decc/curve.hpp"
#include "decc/digest.hpp"
#include "decc/elgamal.hpp"
#include "decc/rng.hpp"
#include "decc/seq_store.hpp"

namespace decc {

// Stream parameters. B is the block size in bases; every block integer is
// big-endian over 2B bits, so 2^(2B)-1 must stay embeddable under K.
struct PipelineParams {
    std::string curve_id;
    std::string seq_id;
    unsigned r = 3;     // insertion segment bits, odd >= 3
    uint32_t K = 256;   // Koblitz multiplier
    uint16_t B = 120;   // block size in bases

    void validate(const CurveParams& c) const;  // Usage/Range errors
};

PipelineParams production_profile();  // secp256k1, r=3, K=256, B=120
PipelineParams test_profile();        // tiny17,  r=3, K=4,   B=1
std::optional<PipelineParams> named_profile(std::string_view name);

struct CiphertextHeader {
    std::string curve_id;
    Digest32 seq_fingerprint{};
    uint8_t r = 3;
    uint32_t K = 256;
    uint16_t B = 120;
    uint64_t plaintext_bit_length = 0;
};

struct Ciphertext {
    CiphertextHeader header;
    std::vector<PointCiphertext> blocks;
};

// bytes -> bits -> DNA insertion encoding -> base blocks -> integers ->
// Koblitz points -> ElGamal pairs. One fresh k per block, drawn in block
// order; blocks may then be processed in parallel.
Ciphertext encrypt_bytes(std::span<const uint8_t> plain, const Point& pub,
                         const CurveParams& curve, const PipelineParams& params,
                         const SeqStore& store, RandomSource& rng);

// Exact inverse. Looks the reference sequence up by header fingerprint
// before touching any point, and verifies every reference-carried bit.
Bytes decrypt_bytes(const Ciphertext& ct, const Int& priv,
                    const CurveParams& curve, const SeqStore& store);

// Wire format (big-endian integers): magic "DECC", version u8=1, curve_id
// (u8 length + ASCII), fingerprint 32B, r u8, K u32, B u16,
// plaintext_bit_length u64, block count u32, then per block C1 and C2 as
// 0x00 (infinity) or 0x04 || x || y with fixed-width coordinates.
Bytes serialize(const Ciphertext& ct, const CurveParams& curve);
Ciphertext deserialize(std::span<const uint8_t> data, const CurveParams& curve);

namespace detail {

// Block staging, exposed so tests can drive the point layers with the DNA
// layer swapped out.
std::vector<Int> bases_to_block_ints(std::string_view bases, uint16_t B);
std::string block_ints_to_bases(std::span<const Int> ms, uint16_t B,
                                size_t base_count);

}  // namespace detail

}  // namespace decc
