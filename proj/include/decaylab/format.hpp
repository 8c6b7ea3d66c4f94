#ifndef DECAYLAB_FORMAT_HPP
#define DECAYLAB_FORMAT_HPP

#include <charconv>
#include <string>

namespace decaylab {

/// Shortest decimal string that parses back to exactly x; "nan"/"inf" as such.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace decaylab

#endif  // DECAYLAB_FORMAT_HPP
