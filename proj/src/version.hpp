#pragma once

namespace pwcsim {

inline constexpr const char* kToolName = "pwcsim";
inline constexpr const char* kToolVersion = "0.1.0";

// Tolerance conventions used across the library and its tests.
inline constexpr double kAlgebraicTol = 1e-12;   // single linear-optics step
inline constexpr double kAccumulatedTol = 1e-9;  // long chains of steps

}  // namespace pwcsim
