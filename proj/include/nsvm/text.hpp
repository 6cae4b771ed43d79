#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace nsvm {

// Shortest decimal form that parses back to the exact same double. Used for
// data and model files so save -> load is lossless.
inline std::string format_exact(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// Nine significant digits, for report-style output (metrics, sweep tables).
inline std::string format_sig9(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

}  // namespace nsvm
