#pragma once

#include <stdexcept>
#include <string>

namespace qedens {

/// Raised when an argument lies outside the mathematical domain of an
/// operation (negative radius, too few nodes, unknown derivative order...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when inputs are individually valid but do not fit together,
/// e.g. a sampled potential whose length differs from the field's grid.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qedens
