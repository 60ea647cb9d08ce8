#pragma once

namespace gcx {

inline constexpr const char* kVersion = "0.1.0";

// Identity of the random-number pipeline, embedded in every report header so
// that archived results can be matched to the code that produced them.
inline constexpr const char* kGeneratorId = "splitmix64-counter/inverse-cdf v1";

}  // namespace gcx
