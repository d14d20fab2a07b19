#include "tunnelkit/closed_rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tunnelkit {

InstantonRate instanton_rate(const CubicPotential& pot, const Units& units) {
  double eps0 = 0.5 * units.hbar * pot.omega0();
  InstantonRate r;
  r.Lambda0 = 18.0 * pot.eps_s() / (5.0 * eps0);
  r.a_q = std::sqrt(120.0 * std::numbers::pi * r.Lambda0);
  r.Gamma = pot.omega0() / (2.0 * std::numbers::pi) * r.a_q *
            std::exp(-r.Lambda0);
  return r;
}

double wkb_rate(const ResonanceData& res, const Units& units) {
  return 2.0 * res.eps / units.hbar;
}

double escape_temperature(double rate, double eps_s, double tau,
                          const Units& units) {
  if (!(rate > 0.0) || !(tau > 0.0) || !(eps_s > 0.0))
    throw std::invalid_argument("escape_temperature: inputs must be positive");
  double x = 2.0 * tau * rate;
  if (x >= 1.0)
    throw std::domain_error(
        "escape_temperature: rate at or above the attempt rate");
  return eps_s / (units.kB * (-std::log(x)));
}

double escape_temperature_instanton(const CubicPotential& pot,
                                    const Units& units) {
  double eps0 = 0.5 * units.hbar * pot.omega0();
  InstantonRate inst = instanton_rate(pot, units);
  return eps0 / units.kB /
         (3.6 - eps0 / pot.eps_s() * std::log(inst.a_q));
}

double escape_temperature_wkb(const CubicPotential& pot, const Units& units) {
  double eps0 = 0.5 * units.hbar * pot.omega0();
  ResonanceData res = resonance(pot, units);
  return eps0 / units.kB /
         (res.F_ref - eps0 / pot.eps_s() * std::log(res.f_gs));
}

}  // namespace tunnelkit
