#pragma once

#include <stdexcept>
#include <string>

namespace rllab {

// Raised when a caller violates an operation's preconditions (shape
// mismatch, nonpositive bandwidth, non-finite external input, ...).
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a computation graph is malformed (unknown op kind, vars from
// different tapes, backward run twice).
class GraphError : public std::logic_error {
 public:
  explicit GraphError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

}  // namespace rllab
