#pragma once

namespace csmv {

inline constexpr const char* kToolName = "csmv";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace csmv
