#include "heatgraph/parallel.hpp"

#include <cstdlib>
#include <string>

#include "heatgraph/errors.hpp"

namespace heatgraph {

std::size_t resolve_jobs(std::size_t requested) {
  if (const char* env = std::getenv("HEATGRAPH_JOBS"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const long value = std::stol(env, &used);
      if (used != std::string(env).size() || value < 1) throw std::invalid_argument(env);
      return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
      throw ValidationError(std::string("HEATGRAPH_JOBS must be a positive integer, got '") +
                            env + "'");
    }
  }
  return requested == 0 ? 1 : requested;
}

}  // namespace heatgraph
