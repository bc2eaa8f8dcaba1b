#pragma once

namespace bdlab {
inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kGenerator = "bdlab 1.0.0";
}  // namespace bdlab
