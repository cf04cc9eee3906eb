#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pubo_forge {

/// Malformed or out-of-contract input (bad file contents, unsupported degree,
/// invalid plan). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text-format error carrying the 1-based line number it was found on.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An exhaustive enumeration would exceed its configured variable cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pubo_forge
