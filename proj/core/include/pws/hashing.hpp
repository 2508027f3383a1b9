#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pws {

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// First 8 bytes of the SHA-256 digest, big-endian.
std::uint64_t sha256_u64(std::string_view data);

}  // namespace pws
