#pragma once

#include <stdexcept>
#include <string>

namespace hoalg {

/// Malformed input or a violated precondition. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A declared filtration certificate is invalid or does not bound a series.
class CertificationError : public InputError {
 public:
  explicit CertificationError(const std::string& what) : InputError(what) {}
};

/// An identity that holds by theorem failed to hold. Always a bug; exit code 3.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A computation needed data beyond a declared weight or arity truncation.
class TruncationOverflow : public std::runtime_error {
 public:
  explicit TruncationOverflow(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hoalg
