#ifndef LMODEL_ERROR_HPP
#define LMODEL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lmodel {

enum class ErrorKind {
  Syntax,        // expression text does not match the grammar
  Schema,        // file contents violate a schema or data-model invariant
  Domain,        // evaluation left the real domain (sqrt of negative, x/0)
  Parameter,     // family parameters violate their constraints
  Precondition,  // caller broke an operation precondition
  Limit,         // search bound exceeded
  Io,
};

// Single exception type for the library; the kind drives the C error code.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// Syntax error carrying the 0-based character offset where parsing stopped.
class SyntaxError : public Error {
public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorKind::Syntax, message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

}  // namespace lmodel

#endif  // LMODEL_ERROR_HPP
