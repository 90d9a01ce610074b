#ifndef BSURF_ERRORS_HPP
#define BSURF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bsurf {

// Status codes shared by the C API and the CLI exit codes.
enum class Status : int {
  Ok = 0,
  SchemaError = 2,        // malformed or out-of-contract input document
  PreconditionError = 3,  // violated operation precondition, cap exceeded
  TheoremFalsified = 4,   // a certified identity failed; must never happen on valid inputs
  InternalError = 5,
};

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation contradicts one of the certified structure
// theorems the library is built around.  Reserved: reaching this on valid
// input is a bug either here or in the theorem.
class TheoremFalsified : public std::runtime_error {
 public:
  explicit TheoremFalsified(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bsurf

#endif
