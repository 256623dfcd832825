#pragma once

#include <stdexcept>
#include <string>

namespace pspectral {

/// Argument outside the domain of an operation (p <= 1, t outside I_i, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its target (step underflow,
/// quadrature failure, unbracketed root, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The search horizon was exhausted without a verdict.
class InconclusiveError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Prufer coordinates requested at the origin of phase space.
class DegenerateStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A documented precondition of a comparison does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pspectral
