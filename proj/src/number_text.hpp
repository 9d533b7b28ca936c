#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace covcomp::detail {

/// Shortest text that reads back to the same double.
inline std::string num(double v) {
  char buf[64];
  const double a = std::abs(v);
  const auto style = (a == 0.0 || (a >= 1e-5 && a < 1e16)) ? std::chars_format::fixed
                                                            : std::chars_format::general;
  const auto r = std::to_chars(buf, buf + sizeof buf, v, style);
  return std::string(buf, r.ptr);
}

} // namespace covcomp::detail
