#pragma once

#include <stdexcept>
#include <string>

namespace afxy {

// Base of every error thrown by the library.  `kind()` is a stable,
// machine-readable tag used by the CLI error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Bad arguments or malformed input documents.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

// An operation needed the phase of a site the field does not define.
class UndefinedSite : public Error {
 public:
  explicit UndefinedSite(const std::string& what) : Error("undefined_site", what) {}
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

// A computed quantity violated an invariant that must always hold.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error("invariant_violation", what) {}
};

class MonodromyError : public Error {
 public:
  explicit MonodromyError(const std::string& what) : Error("monodromy", what) {}
};

class UnderSamplingError : public Error {
 public:
  explicit UnderSamplingError(const std::string& what) : Error("under_sampling", what) {}
};

class SingularPointError : public Error {
 public:
  explicit SingularPointError(const std::string& what) : Error("singular_point", what) {}
};

class OutOfDomainError : public Error {
 public:
  explicit OutOfDomainError(const std::string& what) : Error("out_of_domain", what) {}
};

class ExtensionError : public Error {
 public:
  explicit ExtensionError(const std::string& what) : Error("extension_failure", what) {}
};

}  // namespace afxy
