#pragma once

#include <string>
#include <string_view>

#include "decc/bytes.hpp"

namespace decc {

// Nucleotide sequence over {A, C, G, T}, uppercase canonical.
struct DnaSequence {
    std::string seq_id;
    std::string bases;
    std::string source;  // free-text provenance note
};

// Alphabet error on anything outside {A,C,G,T}; empty input is rejected too.
void validate_bases(std::string_view bases);

// Table mapping: A=00, T=01, G=10, C=11.
BitString bases_to_bits(std::string_view bases);
std::string bits_to_bases(const BitString& bits);  // Framing on odd length

// Insertion-method parameters: every plaintext bit is prepended to one
// r-bit segment of the reference bit stream. r odd keeps each output
// segment an even number of bits, so it maps back to whole bases.
struct InsertionParams {
    unsigned r = 3;      // odd, >= 3
    std::string seq_id;  // reference-sequence identifier

    void validate() const;  // Usage error
};

// Returns the encoded base string (length |plain| * (r+1)/2). Capacity
// error when the reference cannot supply |plain| * r bits.
std::string insertion_encode(const BitString& plain, const DnaSequence& ref,
                             const InsertionParams& ip);

// Recovers the plaintext bits and verifies every reference-carried bit;
// any disagreement raises a Tamper error.
BitString insertion_decode(std::string_view encoded_bases,
                           const DnaSequence& ref, const InsertionParams& ip);

}  // namespace decc
