#pragma once

#include <stdexcept>
#include <string>

namespace ttrose {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed map file, path string or word. Carries the 1-based input line
/// when one applies (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A search ran out of budget without deciding. Never means "absent".
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace ttrose
