#pragma once

#include "tunnelkit/constants.hpp"
#include "tunnelkit/cubic_potential.hpp"
#include "tunnelkit/open_saddle.hpp"
#include "tunnelkit/wkb_spectrum.hpp"

namespace tunnelkit {

// Current-biased junction in SI units.
struct JunctionParams {
  double bias_current = 0;      // A
  double critical_current = 0;  // A
  double capacitance = 0;       // F
  double resistance = 0;        // Ohm
};

struct DerivedJunction {
  double E_J = 0;       // hbar I_c / 2e
  double mass = 0;      // hbar^2 C / 4e^2
  double gamma = 0;     // 1 / (R C)
  double s = 0;         // I / I_c
  double kappa = 0;     // sqrt(1 - s^2)
  double eps_s = 0;     // (2/3) E_J (1 - s^2)^(3/2)
  double omega_p0 = 0;  // sqrt(2 e I_c / hbar C)
  double Omega0 = 0;    // omega_p0 (1 - s^2)^(1/4)
  double eps0 = 0;      // hbar Omega0 / 2
};

// Maps the junction onto the cubic well. Throws std::domain_error when the
// bias is at or above the critical current (no metastable well) and
// std::invalid_argument for non-positive inputs.
DerivedJunction derive_junction(const JunctionParams&, const Units&);
CubicPotential junction_potential(const DerivedJunction&);

// Escape temperature of the damped junction: T = eps_s / (kB (Lambda - ln R))
// with R from the damping-kernel saddle at
// D = 16 pi^3 (gamma / Omega0)(1 + u_inf/E0) exp(3 Lambda). The asymptotic
// large-D branch is used for D >= 1e3 (then ln R = -ln(27 D / 4)). The level
// scheme picks the energy dividing the barrier action in Lambda.
struct EscapePrediction {
  DerivedJunction junction;
  double Lambda = 0;
  double D = 0;
  double R = 0;
  double T_esc = 0;
  SaddleRegime regime = SaddleRegime::exact;
};
EscapePrediction predict_escape_temperature(
    const JunctionParams&, const Units&, double uinf_over_E0 = 0.0,
    LevelScheme = LevelScheme::anharmonic);

// Treats the critical current as the unknown: finds s = I / I_c such that
// the open-system rate
//   Gamma = (Omega0(s)^2 / 2 pi gamma) (4 / (27 * 16 pi^3)) exp(-4 Lambda)
// matches the rate implied by an observed escape temperature, subject to the
// level condition rho_bar sqrt(s) (1 - s^2)^(-5/4) = 1 - 2 zeta(k_ref) with
// rho_bar = sqrt(9 e^3 / (2 hbar C I)) and Lambda = F(k_ref)/(1 - 2 zeta(k_ref)).
// The reference rate is evaluated from the junction derived at the nominal
// critical current. Throws std::runtime_error when no solution exists for
// s in (0.9, 1).
struct InversionResult {
  double critical_current = 0;  // I / s
  double s = 0;
  double k_ref = 0;
  double rho_bar = 0;
  double Lambda = 0;
  double Gamma_exp = 0;
  double residual_match = 0;  // level-condition residual at the solution
  double residual_rate = 0;   // ln-rate residual at the solution
  int iterations = 0;
};
InversionResult invert_critical_current(const JunctionParams& nominal,
                                        double escape_temperature_exp,
                                        const Units&);

}  // namespace tunnelkit
