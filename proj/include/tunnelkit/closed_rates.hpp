#pragma once

#include "tunnelkit/constants.hpp"
#include "tunnelkit/cubic_potential.hpp"
#include "tunnelkit/wkb_spectrum.hpp"

namespace tunnelkit {

// Zero-temperature bounce rate out of the well,
//   Gamma = (Omega0 / 2 pi) a_q exp(-Lambda0),
// with Lambda0 = 18 eps_s / (5 eps0) and a_q = sqrt(120 pi Lambda0).
struct InstantonRate {
  double Lambda0, a_q, Gamma;
};
InstantonRate instanton_rate(const CubicPotential&, const Units&);

// Resonance-width rate 2 eps / hbar = (1 / 2 tau) exp(-Lambda).
double wkb_rate(const ResonanceData&, const Units&);

// Temperature a thermal-activation fit would assign to a rate:
// Gamma = (1 / 2 tau) exp(-eps_s / kB T). Throws std::domain_error when the
// rate is at or above the attempt rate 1 / 2 tau.
double escape_temperature(double rate, double eps_s, double tau, const Units&);

// Closed forms of the above for the two rate conventions:
//   instanton: T = (eps0 / kB) / (18/5 - (eps0/eps_s) ln a_q)
//   wkb:       T = (eps0 / kB) / (F(k_ref) - (eps0/eps_s) ln f(k_gs))
// The wkb form uses the anharmonic level position for k_ref and the
// anharmonic period in the attempt rate.
double escape_temperature_instanton(const CubicPotential&, const Units&);
double escape_temperature_wkb(const CubicPotential&, const Units&);

}  // namespace tunnelkit
