#pragma once

#include <stdexcept>

namespace mcsim {

/// A parameter is outside the range accepted by an operation.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A distance or position lies outside the cell it was checked against.
class OutOfCell : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Argument outside the mathematical domain of a function (e.g. x > x_max).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inputs that should have been produced together do not agree
/// (missing shadowing entry, node absent from an allocation, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mcsim
