#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

// Thrown when a search terminates without finding the requested object
// (e.g. no integer below the search limit has enough representations).
struct NotFoundError : std::runtime_error {
  explicit NotFoundError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a numerical routine cannot certify its result
// (non-convergence, exact-arithmetic overflow, ambiguous clustering).
struct ComputationError : std::runtime_error {
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace speclab
