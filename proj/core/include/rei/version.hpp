#pragma once

namespace rei {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rei
