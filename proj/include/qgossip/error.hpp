#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgossip {

/// Bad configuration file, key or value. Maps to the usage exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The simulated state became unusable (non-finite, out of quantizer range).
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, std::size_t step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace qgossip
