#pragma once

#include <stdexcept>
#include <string>

namespace cmcfol {

// Argument outside the set where a formula is defined (r = 0 for kappa_r,
// 1 - (r1 - r)^2 <= 0 for the closed-form profile, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a documented precondition (bad parameters, bad grid sizes).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The 1-form omega vanishes (below the margin) on a leaf tangent.
class LeafwiseVanishingError : public std::runtime_error {
 public:
  LeafwiseVanishingError(const std::string& what, int i, int j, double value)
      : std::runtime_error(what), i_(i), j_(j), value_(value) {}
  int i() const { return i_; }
  int j() const { return j_; }
  double value() const { return value_; }

 private:
  int i_;
  int j_;
  double value_;
};

}  // namespace cmcfol
