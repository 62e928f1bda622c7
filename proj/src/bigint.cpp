#include "decc/bigint.hpp"

#include <cctype>

#include "decc/errors.hpp"

namespace decc {

Int int_from_hex(std::string_view hex) {
    if (hex.empty())
        fail(ErrorKind::Parse, "empty hex integer");
    for (char c : hex)
        if (!std::isxdigit(static_cast<unsigned char>(c)))
            fail(ErrorKind::Parse, "invalid hex digit in integer: '" +
                                       std::string(1, c) + "'");
    Int v;
    mpz_set_str(v.get_mpz_t(), std::string(hex).c_str(), 16);
    return v;
}

std::string int_to_hex(const Int& v) {
    if (v < 0)
        fail(ErrorKind::Range, "negative integer has no hex encoding here");
    return v.get_str(16);
}

Int int_from_bytes_be(std::span<const uint8_t> data) {
    Int v = 0;
    if (!data.empty())
        mpz_import(v.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
    return v;
}

Bytes int_to_bytes_be(const Int& v, size_t width) {
    if (v < 0)
        fail(ErrorKind::Range, "cannot encode negative integer");
    if (bit_length(v) > width * 8)
        fail(ErrorKind::Range, "integer does not fit in " +
                                   std::to_string(width) + " bytes");
    Bytes out(width, 0);
    size_t count = 0;
    if (v != 0)
        mpz_export(out.data() + width - (bit_length(v) + 7) / 8, &count, 1, 1,
                   1, 0, v.get_mpz_t());
    return out;
}

size_t bit_length(const Int& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace decc
