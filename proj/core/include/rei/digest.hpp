#pragma once

#include <string>
#include <string_view>

namespace rei {

/// SHA-256 of a byte string, as 64 lowercase hex characters.
std::string sha256_hex(std::string_view bytes);

/// SHA-256 of a file's contents; throws DataError when unreadable.
std::string sha256_file(const std::string& path);

}  // namespace rei
