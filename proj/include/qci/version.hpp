#pragma once

namespace qci {

inline constexpr const char* kToolName = "qci";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace qci
