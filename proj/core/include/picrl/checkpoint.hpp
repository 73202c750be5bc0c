#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "picrl/param_set.hpp"

namespace picrl::io {

// Self-describing binary tensor container:
//   magic "PICRLCKP" | u32 format version | u32 tensor count |
//   per tensor: u32 name length | name | u64 rows | u64 cols |
//               rows*cols little-endian f64
// Round-trips are bit-exact.

void save_checkpoint(const std::filesystem::path& path,
                     const std::vector<std::pair<std::string, const numerics::ParamSet*>>& sets);

struct CheckpointData {
  std::vector<std::pair<std::string, numerics::Matrix>> tensors;  // file order
  const numerics::Matrix* find(const std::string& name) const;
};

// Throws IoError on a bad magic, version mismatch or truncation.
CheckpointData load_checkpoint(const std::filesystem::path& path);

// All-or-nothing load into existing parameter sets: every parameter must be
// present with its exact shape under "<prefix>/<param name>".
void load_into(const std::filesystem::path& path,
               const std::vector<std::pair<std::string, numerics::ParamSet*>>& sets);

}  // namespace picrl::io
