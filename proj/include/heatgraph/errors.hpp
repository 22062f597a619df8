#pragma once

#include <stdexcept>
#include <string>

namespace heatgraph {

// Bad input: malformed graphs, inconsistent sizes, invalid parameters.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical kernel failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heatgraph
