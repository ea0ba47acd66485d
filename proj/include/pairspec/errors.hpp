#pragma once

#include <stdexcept>
#include <string>

namespace pairspec {

/// Base class for every error raised by the library. All of these describe
/// bad or insufficient input data; the CLI maps them to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed minutiae or template file. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DegeneratePairError : public Error {
 public:
  using Error::Error;
};

class InsufficientMinutiaeError : public Error {
 public:
  using Error::Error;
};

class DegenerateScoreError : public Error {
 public:
  using Error::Error;
};

class IncompatibleTemplateError : public Error {
 public:
  using Error::Error;
};

class UnsupportedTransformError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Invalid invocation (bad flag combination, empty input where one is
/// required). The CLI maps this to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace pairspec
