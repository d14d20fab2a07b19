#pragma once

#include <complex>

#include "tunnelkit/constants.hpp"
#include "tunnelkit/cubic_potential.hpp"

namespace tunnelkit {

// Shape functions of the cubic well, parametrized by a modulus k in [0, 1):
//   level energy      E(k)   = 2 eps_s zeta(k)
//   well frequency    Omega  = Omega0 * freq_factor(k)
//   well action       S(x_right, x_left; E(k)) = (eps_s / Omega0) * action_factor(k)
// zeta and action_factor increase monotonically; zeta(0) = 0, zeta(1) = 1/2,
// action_factor(0) = 0 and action_factor(k -> 1) -> 18/5. freq_factor(0) = 1
// and drops to zero at the barrier top.
double zeta_of_k(double k);
double freq_factor(double k);
double action_factor(double k);

struct EllipticPoint {
  double k, zeta, f, F;
};
EllipticPoint elliptic_point(double k);

// Inverse of zeta on (0, 1/2).
double modulus_for_zeta(double zeta_target);
// Modulus of the energy reflected about the half barrier:
// zeta(k_ref) = 1/2 - zeta(k).
double reflect_modulus(double k);

struct TrappedLevel {
  int n;
  double k;
  double energy;
};
// Quantized level n from action_factor(k) = (1 + 2 n) pi eps0 / eps_s with
// eps0 = hbar Omega0 / 2. Throws std::domain_error when the requested level
// does not fit under the barrier.
TrappedLevel trapped_level(const CubicPotential&, const Units&, int n = 0);

// Position of the lowest resonance: Bohr-Sommerfeld energy (anharmonic) or
// the bare oscillator zero point (harmonic).
enum class LevelScheme { anharmonic, harmonic };
// Half period of the well oscillation entering the attempt rate:
// pi / (Omega0 freq_factor(k_gs)) or pi / Omega0.
enum class PeriodScheme { anharmonic, harmonic };

struct ResonanceData {
  double k_gs = 0, zeta_gs = 0, f_gs = 0;  // ground level modulus and factors
  double k_ref = 0, F_ref = 0;  // reflection of k_gs, barrier action factor
  double E0 = 0;                // resonance position
  double Lambda = 0;            // barrier exponent, (eps_s / E0) * F_ref
  double tau = 0;               // half oscillation period in the well
  double eps = 0;               // half width, (hbar / 4 tau) exp(-Lambda)

  std::complex<double> pole_lower() const { return {E0, -eps}; }
  std::complex<double> pole_upper() const { return {E0, +eps}; }
};
ResonanceData resonance(const CubicPotential&, const Units&,
                        LevelScheme = LevelScheme::anharmonic,
                        PeriodScheme = PeriodScheme::anharmonic);

// d(delta)/dE of the isolated resonance: -eps / ((E - E0)^2 + eps^2).
double phase_shift_derivative(double energy, double E0, double eps);
// Energy density of the quasi-bound state: (1/pi) eps / ((E - E0)^2 + eps^2).
double norm_profile(double energy, double E0, double eps);

// integral of sqrt(2 M |U - E|) dx from x_from to x_to. The square-root
// vanishing at turning points is absorbed exactly by substituting
// x = endpoint +/- u^2 on each half interval before the adaptive quadrature,
// so endpoints may be turning points.
double action(const CubicPotential&, double energy, double x_from, double x_to,
              double rel_tol = 1e-11);

}  // namespace tunnelkit
