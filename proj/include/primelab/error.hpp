#pragma once

#include <stdexcept>
#include <string>

namespace primelab {

// Argument outside the mathematical domain of a function (e.g. Lambda(0)).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated a documented precondition that is not a domain issue,
// e.g. a prime cutoff too small to control the Euler-product tail.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested work exceeds a configured memory or enumeration budget.
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Evaluation at a pole (s = 1 for zeta and its relatives).
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input file; carries the 1-based line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace primelab
