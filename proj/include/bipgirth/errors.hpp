#pragma once

#include <stdexcept>
#include <string>

namespace bipgirth {

/// Malformed graph input: bad indices, inconsistent headers, invalid selections.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter outside the domain an operation accepts.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A work limit was hit before the search could decide. Never means "none exists".
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EnumerationCapExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

}  // namespace bipgirth
