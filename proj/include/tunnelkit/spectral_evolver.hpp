#pragma once

#include <complex>
#include <vector>

#include "tunnelkit/constants.hpp"

namespace tunnelkit {

// Two-index spectral field C(a1, a2) on a uniform grid, either in energy or
// in momentum representation. Row-major, axis.size()^2 complex entries.
struct SpectralField {
  enum class Rep { energy, momentum };

  Rep rep = Rep::energy;
  std::vector<double> axis;
  std::vector<std::complex<double>> data;

  int n() const { return static_cast<int>(axis.size()); }
  double step() const { return axis.size() > 1 ? axis[1] - axis[0] : 0.0; }
  std::complex<double>& at(int i, int j) {
    return data[static_cast<std::size_t>(i) * axis.size() + j];
  }
  const std::complex<double>& at(int i, int j) const {
    return data[static_cast<std::size_t>(i) * axis.size() + j];
  }
};

// Initial quasi-bound field C(E1, E2) = sqrt(w(E1) w(E2)) with w the
// resonance profile, on E0 +/- half_width * eps, renormalized so that
// sum |C|^2 dE^2 = 1. half_width below 5 truncates the profile too hard and
// throws std::invalid_argument; 20 is a good default. points must be >= 16.
SpectralField init_false_vacuum(double E0, double eps, double half_width,
                                int points);

// Energy-representation damping kernel
//   L(E1, E2) = i (E1 - E2)/hbar + (eps/hbar) 2 D (u1 - u2)^2,
// u_i = 1 / (1 + ((E_i - E0)/eps)^2). D absorbs the bath coupling:
// D = gamma hbar sigma2 (E0 + u_inf) / eps^3.
struct PhaseShiftModel {
  double E0 = 0;
  double eps = 1;
  double hbar = 1;
  double D = 0;

  static PhaseShiftModel physical(double E0, double eps, double gamma,
                                  double sigma2, double E0_plus_uinf,
                                  double hbar);
};

std::complex<double> kernel(const PhaseShiftModel&, double E1, double E2);

// Multiplies the field by exp(-L dt) nodewise (exact step, semigroup).
void evolve_phase_shift(SpectralField&, const PhaseShiftModel&, double dt);

// Overlap sum C(t) conj(C(0)) dA over the grid; real by hermiticity of the
// field. Equals 1 at t = 0 for an init_false_vacuum field.
double persistence(const SpectralField& current, const SpectralField& initial);

// Momentum-representation transport, split into an exact local factor
// (free phase + dephasing) and an explicit finite-difference step for
// friction drift and momentum diffusion (Strang order).
struct KramersTerms {
  bool phase = true;
  bool drift = true;
  bool diffusion = true;
  bool dephasing = true;
};

struct KramersModel {
  double mass = 1;
  double gamma = 0;   // friction rate
  double sigma2 = 0;  // bath energy scale; diffusion constant is gamma M sigma2
  double hbar = 1;
  double E0 = 0;      // resonance parameters for the dephasing factor
  double eps = 1;
  double u_inf = 0;
  KramersTerms terms;
};

// Largest stable explicit step on this grid (0.2 dp^2 / (gamma M sigma2),
// 0.25 dp / (gamma p_max), 0.25 hbar M / p_max^2; whichever terms apply).
double kramers_max_step(const SpectralField&, const KramersModel&);

// Advances to t_final in steps of dt (last step shortened). Outflow
// boundaries. Throws std::invalid_argument if dt exceeds kramers_max_step
// or the field is not in momentum representation.
void evolve_kramers_local(SpectralField&, const KramersModel&, double t_final,
                          double dt);

// Trapezoid sums along the diagonal; in momentum representation the measure
// dp / mass converts to the energy normalization, E = p^2/2M - u_inf.
struct Diagnostics {
  double norm = 0;
  double mean_energy = 0;
};
Diagnostics diagnostics(const SpectralField&, double mass, double u_inf);

// Characteristic scales of the damped two-level escape problem. alpha is the
// size of the relevant energy window in units of eps.
struct DecoherenceScales {
  double alpha = 1;
  double tau_relax = 0;       // 1 / gamma
  double lambda_thermal = 0;  // hbar / (2 sqrt(sigma2 M))
  double l_decoh = 0;         // alpha^2 hbar sqrt(E0 + u_inf) / (2 eps sqrt(M))
  double tau_decoh = 0;       // tau_relax (lambda_thermal / l_decoh)^2
  double tau_tunn = 0;        // hbar / eps
  double D = 0;
};
DecoherenceScales decoherence_scales(double gamma, double sigma2, double mass,
                                     double E0_plus_uinf, double eps,
                                     double hbar, double alpha);

// D = gamma hbar sigma2 (E0 + u_inf) / eps^3.
double decoherence_strength(double gamma, double sigma2, double E0_plus_uinf,
                            double eps, double hbar);
// Same strength written through the barrier exponent when sigma2 = E0 = eps0
// and the attempt period is pi / Omega0:
// D = 16 pi^3 (gamma / Omega0) (1 + u_inf/E0) exp(3 Lambda).
double decoherence_strength_junction(double gamma, double Omega0,
                                     double Lambda, double uinf_over_E0);

// Serial reference kernels, bitwise-identical to the parallel paths.
namespace serial {
void evolve_phase_shift(SpectralField&, const PhaseShiftModel&, double dt);
double persistence(const SpectralField& current, const SpectralField& initial);
void evolve_kramers_local(SpectralField&, const KramersModel&, double t_final,
                          double dt);
}  // namespace serial

}  // namespace tunnelkit
