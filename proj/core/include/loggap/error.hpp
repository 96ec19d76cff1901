#pragma once

#include <stdexcept>
#include <string>

namespace loggap {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An operation received an empty sequence or a zero length.
class EmptyInputError : public std::invalid_argument {
 public:
  explicit EmptyInputError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// A documented precondition (ordering, distinctness, ...) was violated.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace loggap
