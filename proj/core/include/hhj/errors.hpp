#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hhj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad grid, non-finite samples,
/// mismatched grids, unsupported dimension).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical step produced non-finite values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Field file could not be parsed. `line()` is 1-based; 0 means "before the
/// first line" (e.g. the file could not be opened).
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hhj
