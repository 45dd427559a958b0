#pragma once

#include <stdexcept>
#include <string>

namespace torsolab {

/// Base of every error the toolkit throws. `kind()` is a short stable token
/// used by the command-line front end (`error: <kind>: <detail>`).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& detail) : Error("input", detail) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& detail, int line, int offset)
      : Error("parse", "line " + std::to_string(line) + ", offset " +
                           std::to_string(offset) + ": " + detail),
        line_(line),
        offset_(offset) {}

  int line() const noexcept { return line_; }
  int offset() const noexcept { return offset_; }

 private:
  int line_;
  int offset_;
};

/// An exact search was asked to run above its configured ceiling.
class SizeLimitError : public Error {
 public:
  explicit SizeLimitError(const std::string& detail)
      : Error("size-limit", detail) {}
};

/// A construction exceeded a node/step/result guard.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& detail)
      : Error("resource", detail) {}
};

}  // namespace torsolab
