#pragma once

#include <stdexcept>
#include <string>

namespace psihat {

// Domain-level failures (as opposed to malformed arguments): the moduli
// space is empty or the integrand's degree does not match its dimension.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyModuliSpaceError : public DomainError {
 public:
  EmptyModuliSpaceError() : DomainError("empty moduli space") {}
};

class DimensionMismatchError : public DomainError {
 public:
  DimensionMismatchError() : DomainError("dimension mismatch") {}
};

}  // namespace psihat
