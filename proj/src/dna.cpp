#include "decc/dna.hpp"

#include "decc/errors.hpp"

namespace decc {

namespace {

// A=00, T=01, G=10, C=11
int base_code(char c) {
    switch (c) {
        case 'A': return 0;
        case 'T': return 1;
        case 'G': return 2;
        case 'C': return 3;
        default: return -1;
    }
}

constexpr char kCodeToBase[4] = {'A', 'T', 'G', 'C'};

// Converts the first `count` bases to bits (2 per base).
BitString prefix_bits(std::string_view bases, size_t count) {
    BitString bits;
    bits.reserve(count * 2);
    for (size_t i = 0; i < count; ++i) {
        int code = base_code(bases[i]);
        if (code < 0)
            fail(ErrorKind::Alphabet,
                 std::string("invalid base '") + bases[i] + "' at position " +
                     std::to_string(i));
        bits.push_back(code & 2);
        bits.push_back(code & 1);
    }
    return bits;
}

}  // namespace

void validate_bases(std::string_view bases) {
    if (bases.empty()) fail(ErrorKind::Alphabet, "empty base sequence");
    for (size_t i = 0; i < bases.size(); ++i)
        if (base_code(bases[i]) < 0)
            fail(ErrorKind::Alphabet,
                 std::string("invalid base '") + bases[i] + "' at position " +
                     std::to_string(i));
}

BitString bases_to_bits(std::string_view bases) {
    return prefix_bits(bases, bases.size());
}

std::string bits_to_bases(const BitString& bits) {
    if (bits.size() % 2 != 0)
        fail(ErrorKind::Framing,
             "bit string length " + std::to_string(bits.size()) +
                 " does not map to whole bases");
    std::string out;
    out.reserve(bits.size() / 2);
    for (size_t i = 0; i < bits.size(); i += 2)
        out.push_back(kCodeToBase[(bits[i] ? 2 : 0) | (bits[i + 1] ? 1 : 0)]);
    return out;
}

void InsertionParams::validate() const {
    if (r < 3 || r % 2 == 0)
        fail(ErrorKind::Usage, "segment length r must be odd and >= 3");
}

std::string insertion_encode(const BitString& plain, const DnaSequence& ref,
                             const InsertionParams& ip) {
    ip.validate();
    size_t needed_ref_bits = plain.size() * ip.r;
    if (needed_ref_bits > ref.bases.size() * 2)
        fail(ErrorKind::Capacity,
             "reference sequence too short: need " +
                 std::to_string(needed_ref_bits) + " bits, have " +
                 std::to_string(ref.bases.size() * 2));

    BitString ref_bits = prefix_bits(ref.bases, (needed_ref_bits + 1) / 2);
    BitString out;
    out.reserve(plain.size() * (ip.r + 1));
    for (size_t i = 0; i < plain.size(); ++i) {
        out.push_back(plain[i]);
        for (unsigned j = 0; j < ip.r; ++j)
            out.push_back(ref_bits[i * ip.r + j]);
    }
    return bits_to_bases(out);
}

BitString insertion_decode(std::string_view encoded_bases,
                           const DnaSequence& ref, const InsertionParams& ip) {
    ip.validate();
    size_t seg_bases = (ip.r + 1) / 2;
    if (encoded_bases.size() % seg_bases != 0)
        fail(ErrorKind::Framing,
             "encoded length " + std::to_string(encoded_bases.size()) +
                 " bases is not a multiple of the segment size " +
                 std::to_string(seg_bases));

    BitString enc_bits = prefix_bits(encoded_bases, encoded_bases.size());
    size_t nseg = enc_bits.size() / (ip.r + 1);
    size_t needed_ref_bits = nseg * ip.r;
    if (needed_ref_bits > ref.bases.size() * 2)
        fail(ErrorKind::Capacity,
             "reference sequence too short to verify " +
                 std::to_string(nseg) + " segments");
    BitString ref_bits = prefix_bits(ref.bases, (needed_ref_bits + 1) / 2);

    BitString plain;
    plain.reserve(nseg);
    for (size_t i = 0; i < nseg; ++i) {
        size_t off = i * (ip.r + 1);
        plain.push_back(enc_bits[off]);
        for (unsigned j = 0; j < ip.r; ++j)
            if (enc_bits[off + 1 + j] != ref_bits[i * ip.r + j])
                fail(ErrorKind::Tamper,
                     "reference bits disagree in segment " +
                         std::to_string(i) + "; sequence was altered");
    }
    return plain;
}

}  // namespace decc
