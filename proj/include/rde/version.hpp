#pragma once

namespace rde {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rde
