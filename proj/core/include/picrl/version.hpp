#pragma once

namespace picrl {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever the checkpoint binary layout changes.
inline constexpr unsigned kCheckpointFormatVersion = 1;

}  // namespace picrl
