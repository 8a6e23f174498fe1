#pragma once

namespace mvlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mvlab
