#pragma once

#include <numbers>

namespace casimir::units {

/// Reduced Planck constant times the speed of light, J m (CODATA).
inline constexpr double kHbarC = 3.16152677e-26;

/// pi^3/360: parallel-plate coefficient pi^2/720 times the 2 pi of a
/// cylindrical area element.
inline constexpr double kPfaCoefficient =
    std::numbers::pi * std::numbers::pi * std::numbers::pi / 360.0;

}  // namespace casimir::units
