#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nslife {

/// Argument outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A bound needs a norm that the caller did not supply.
class UnavailableBound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent bookkeeping produced a non-integrable kernel or an empty
/// admissible set. `constraint` names the violated condition.
class InfeasibleExponent : public std::domain_error {
 public:
  InfeasibleExponent(std::string constraint, const std::string& what)
      : std::domain_error(what), constraint_(std::move(constraint)) {}
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

}  // namespace nslife
