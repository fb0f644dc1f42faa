#pragma once

#include <stdexcept>
#include <string>

namespace nilca {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  Disjointness,
  PeriodTooSmall,
  BackgroundInstability,
  GuardExceeded,
  Parse,
  FileNotFound,
  UnknownName,
  Unsupported,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so front ends can map
// it to a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace nilca
