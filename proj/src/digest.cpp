#include "decc/digest.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace decc {

Digest32 sha256(std::span<const uint8_t> data) {
    Digest32 out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(),
                   nullptr) != 1 ||
        len != out.size())
        throw std::runtime_error("SHA-256 computation failed");
    return out;
}

Digest32 sha256(std::string_view text) {
    return sha256(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(text.data()), text.size()));
}

}  // namespace decc
