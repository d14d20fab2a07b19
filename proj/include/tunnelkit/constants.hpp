#pragma once

// Physical constants are pinned to fixed values (not tracking CODATA updates)
// so that junction-derived quantities stay bit-reproducible across releases.

namespace tunnelkit {

inline constexpr double kHbar = 1.054572e-34;             // J s
inline constexpr double kElementaryCharge = 1.602176e-19;  // C
inline constexpr double kBoltzmann = 1.380650e-23;         // J / K

// Unit system handed to routines that need hbar or k_B explicitly.
struct Units {
  double hbar = kHbar;
  double kB = kBoltzmann;

  static constexpr Units si() { return {kHbar, kBoltzmann}; }
  static constexpr Units natural() { return {1.0, 1.0}; }
};

}  // namespace tunnelkit
