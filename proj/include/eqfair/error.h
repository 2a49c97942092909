#pragma once

#include <stdexcept>
#include <string>

namespace eqfair {

// Caller supplied arguments or data violating an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A statistic that is undefined for the given data (e.g. a single non-empty
// group after pruning).
class UndefinedStatistic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Files that cannot be read or do not follow the expected layout. The
// message carries the path and, where known, the row or field.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eqfair
