#pragma once

#include <numbers>

/// Reduced units used throughout: hbar = c = eps0 = mu0 = 1, frequencies in
/// units of the atomic reference frequency w10 and lengths in c / w10.
/// Energies come out in units of hbar * w10.
namespace vdw {

inline constexpr double kPi = std::numbers::pi;

}  // namespace vdw
