#ifndef ACBM_ERROR_HPP
#define ACBM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace acbm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input, or a bracket that violates the Jacobi identity.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An argument outside the operation's domain (negative tolerance, unknown tag, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// The algebra does not belong to the single basic class the caller asked about.
class ClassificationError : public Error {
 public:
  using Error::Error;
};

/// A matrix handed to the closed-form exponential is not in the class's
/// minimal-polynomial family.
class FamilyViolation : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace acbm

#endif  // ACBM_ERROR_HPP
