#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace decc {

using Digest32 = std::array<uint8_t, 32>;

Digest32 sha256(std::span<const uint8_t> data);
Digest32 sha256(std::string_view text);

}  // namespace decc
