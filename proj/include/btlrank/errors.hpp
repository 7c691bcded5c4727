#pragma once

#include <stdexcept>
#include <string>

namespace btlrank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or input violates a documented precondition.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error("validation error: " + what) {}
};

// The maximum-likelihood estimate does not exist for the given data (the win
// digraph is not strongly connected, or a tree edge was swept).
class MleNonexistenceError : public Error {
 public:
  explicit MleNonexistenceError(const std::string& what)
      : Error("MLE does not exist: " + what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error("numerical error: " + what) {}
};

// A graph/data/fit file could not be parsed.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what)
      : Error("malformed input: " + what) {}
};

}  // namespace btlrank
