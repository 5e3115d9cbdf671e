#ifndef ECIBO_FORMAT_HPP
#define ECIBO_FORMAT_HPP

#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

namespace ecibo {

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_double: to_chars failed");
  }
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("parse_double: not a number: '" + s + "'");
  }
  return v;
}

}  // namespace ecibo

#endif
