#pragma once

#include <stdexcept>
#include <string>

namespace picrl {

// Shape/dimension violations on matrix and layer operations.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid user-supplied configuration (bad key, value out of range). CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Runtime faults: non-finite values, stale caches, broken invariants. CLI exit code 3.
class Fault : public std::runtime_error {
 public:
  explicit Fault(const std::string& what) : std::runtime_error(what) {}
};

// File I/O and format errors (checkpoints, CSVs, manifests). CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace picrl
