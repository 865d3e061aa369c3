#pragma once

#include <stdexcept>
#include <string>

namespace weil {

// Input failed a structural check (bad group table, non-fundamental
// discriminant, wrong matrix shape).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A cochain complex whose consecutive boundaries do not compose to zero.
class MalformedComplex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A real complex handed to the determinant is not exact.
class ExactnessError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An L-value routine was called with a character of the wrong parity.
class ParityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A cochain complex would exceed the configured size budget.
class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace weil
