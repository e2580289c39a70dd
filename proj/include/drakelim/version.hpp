#pragma once

namespace drakelim {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kToolName = "drakelim";

}  // namespace drakelim
