#pragma once

#include <stdexcept>
#include <string>

namespace rumorlab {

// Invalid arguments: out-of-range parameters, malformed laws, bad flags.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical routine failed to converge on inputs that should be valid.
class NumericFault : public std::runtime_error {
 public:
  explicit NumericFault(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rumorlab
