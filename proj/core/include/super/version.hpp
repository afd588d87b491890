#pragma once

namespace sup {

inline constexpr const char* kToolName = "supertool";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace sup
