#pragma once

#include <stdexcept>
#include <string>

namespace beireg {

// Malformed input: bad labels, violated preconditions, unparsable JSON.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A size or time budget was exceeded. Never silently truncated.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace beireg
