#pragma once

#include <stdexcept>
#include <string>

namespace commvar {

// Raised when a requested enumeration or scan would exceed a configured
// feasibility limit. Never caught internally; results are never truncated.
class LimitExceeded : public std::runtime_error {
 public:
  explicit LimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace commvar
