#ifndef FRAMEKIT_UTIL_HPP
#define FRAMEKIT_UTIL_HPP

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace framekit {

// All recoverable failures surface as framekit::Error; subclasses mark the
// failure class so the CLI can map them to diagnostics uniformly.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& msg) : Error(msg) {}
  // "<path>:<line>: <msg>"
  FormatError(const std::string& path, int line, const std::string& msg)
      : Error(path + ":" + std::to_string(line) + ": " + msg) {}
};

// Referential-integrity failures: unknown frame, FE, entity, language.
class LookupError : public Error {
 public:
  explicit LookupError(const std::string& msg) : Error(msg) {}
};

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Trims ASCII whitespace at both ends and collapses internal runs to one space.
std::string collapse_whitespace(std::string_view s);

// ASCII-only case fold; non-ASCII bytes pass through unchanged.
std::string ascii_lower(std::string_view s);

bool contains_whitespace(std::string_view s);

// Calendar dates are plain day counts; all ordering and arithmetic is on days.
using Day = std::chrono::sys_days;

std::optional<Day> parse_date(std::string_view iso);  // strict YYYY-MM-DD
std::string format_date(Day d);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace framekit

#endif
