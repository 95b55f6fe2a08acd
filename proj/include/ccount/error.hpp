#pragma once

#include <stdexcept>
#include <string>

namespace ccount {

// Root of every error the library throws. The CLI maps the subclasses
// onto exit codes (domain/config -> 3, io/decode/parse -> 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A moment E|Z|^lambda that does not exist for the requested lambda.
class DivergentMomentError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UpdateError : public Error {
 public:
  using Error::Error;
};

class MergeError : public Error {
 public:
  using Error::Error;
};

// A sketch coordinate is zero (or non-positive where positivity is
// required). Under the model this has probability zero.
class DegenerateSketchError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ccount
