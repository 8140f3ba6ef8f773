#pragma once

#include <stdexcept>
#include <string>

namespace tuttemc {

// A precondition on the mathematical inputs was violated (parameter out of
// range, enumeration guard exceeded, infeasible generator request).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed graph file or parameter string.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tuttemc
