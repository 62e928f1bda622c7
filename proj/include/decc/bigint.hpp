#pragma once

#include <gmpxx.h>

#include <span>
#include <string>

#include "decc/bytes.hpp"

namespace decc {

using Int = mpz_class;

Int int_from_hex(std::string_view hex);  // big-endian, no 0x; Parse error
std::string int_to_hex(const Int& v);    // lowercase, minimal digits

Int int_from_bytes_be(std::span<const uint8_t> data);

// Fixed-width big-endian encoding; Range error if v < 0 or does not fit.
Bytes int_to_bytes_be(const Int& v, size_t width);

size_t bit_length(const Int& v);  // bit_length(0) == 0

}  // namespace decc
