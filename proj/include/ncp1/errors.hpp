#pragma once

#include <stdexcept>
#include <string>

namespace ncp1 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different base fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// A structural axiom failed (associativity, action laws, ...). The message
/// names the axiom and the offending basis indices.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments does not hold.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An element that was required to be invertible is not.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// A construction would exceed the configured tensor-dimension budget.
class ResourceGuard : public Error {
 public:
  ResourceGuard(const std::string& what, std::size_t offending)
      : Error(what), offending_(offending) {}
  std::size_t offending() const noexcept { return offending_; }

 private:
  std::size_t offending_;
};

}  // namespace ncp1
