#pragma once

namespace ifd {

inline constexpr const char* kToolName = "ifdcav";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace ifd
