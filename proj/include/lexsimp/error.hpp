#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexsimp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (bad JSON, wrong column count, ...). Carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A lexical resource could not be opened or parsed.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Caller broke an operation precondition (e.g. querying an unmasked position).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Traces and dataset do not line up one-to-one.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexsimp
