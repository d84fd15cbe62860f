#pragma once

#include <stdexcept>
#include <string>

namespace prioq {

// Argument outside the support or parameter range of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The requested quantity only exists as a degenerate limit (e.g. a
// stationary law at p = 1).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition on an input object was violated.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Valid inputs, but a combination the library does not implement.
class UnsupportedConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A series or iteration cannot be certified to converge. Carries the
// certificate value (e.g. the Hilbert-Schmidt norm) that failed.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double certificate)
      : std::runtime_error(what), certificate_(certificate) {}
  double certificate() const noexcept { return certificate_; }

 private:
  double certificate_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prioq
