#pragma once

#include <cstdio>
#include <string>

namespace rgg::detail {

// 17 significant digits: doubles round-trip exactly.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace rgg::detail
