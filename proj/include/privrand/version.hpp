#pragma once

namespace privrand {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace privrand
