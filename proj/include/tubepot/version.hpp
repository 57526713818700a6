#pragma once

namespace tubepot {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tubepot
