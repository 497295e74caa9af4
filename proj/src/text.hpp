#pragma once

#include <cstdio>
#include <string>

namespace dnls::detail {

/// Shortest "%g" spelling, for check names and messages.
inline std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace dnls::detail
