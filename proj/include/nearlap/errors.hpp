#ifndef NEARLAP_ERRORS_HPP
#define NEARLAP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nearlap {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad token, ragged row, missing header).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a semantic contract: dimensions, index
// ranges, size caps, parameter domains, non-finite values.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Iterative numerical routine failed to converge (eigensolver, simplex).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace nearlap

#endif  // NEARLAP_ERRORS_HPP
