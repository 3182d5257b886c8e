#pragma once

namespace rgg {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace rgg
