#pragma once

#include <stdexcept>
#include <string>

namespace covplan {

// Instance exceeds a hard enumeration limit of an exact solver.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace covplan
