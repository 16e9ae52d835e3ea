#pragma once

namespace rydent {

inline constexpr const char* kVersion = "0.3.0";

} // namespace rydent
