#pragma once

#include <stdexcept>
#include <string>

namespace vilenkin {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad base, point outside
/// [0,1), index 0 passed to a chaos set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two operands live over different bases p.
class BaseMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The requested rank needs more cells than the configured cell limit.
class RankOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace vilenkin
