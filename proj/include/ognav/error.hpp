#pragma once

#include <stdexcept>
#include <string>

namespace ognav {

/// Bad configuration (option files, parameter ranges). CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad or inconsistent scenario document. CLI exit code 3.
struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Observation inconsistent with the map it is integrated into.
struct MappingError : std::runtime_error {
  explicit MappingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ognav
