#pragma once

#include <stdexcept>
#include <string>

namespace wcomp {

// Raised when an operation's preconditions are not met by its arguments.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace wcomp
