#pragma once

namespace treering {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace treering
