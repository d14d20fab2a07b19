#include "tunnelkit/josephson.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tunnelkit/spectral_evolver.hpp"
#include "tunnelkit/wkb_spectrum.hpp"

namespace tunnelkit {

namespace {
const double kPi = std::numbers::pi;
}

DerivedJunction derive_junction(const JunctionParams& p, const Units& units) {
  if (!(p.bias_current > 0.0) || !(p.critical_current > 0.0) ||
      !(p.capacitance > 0.0) || !(p.resistance > 0.0))
    throw std::invalid_argument("derive_junction: inputs must be positive");
  DerivedJunction d;
  const double e = kElementaryCharge;
  d.s = p.bias_current / p.critical_current;
  if (d.s >= 1.0)
    throw std::domain_error(
        "derive_junction: bias at or above the critical current leaves no "
        "metastable well");
  d.E_J = units.hbar * p.critical_current / (2.0 * e);
  d.mass = units.hbar * units.hbar * p.capacitance / (4.0 * e * e);
  d.gamma = 1.0 / (p.resistance * p.capacitance);
  d.kappa = std::sqrt(1.0 - d.s * d.s);
  d.eps_s = (2.0 / 3.0) * d.E_J * d.kappa * d.kappa * d.kappa;
  d.omega_p0 =
      std::sqrt(2.0 * e * p.critical_current / (units.hbar * p.capacitance));
  // equal to sqrt(3 eps_s / (2 (1-s^2) M)); the two forms agree to rounding
  d.Omega0 = d.omega_p0 * std::sqrt(d.kappa);
  d.eps0 = 0.5 * units.hbar * d.Omega0;
  return d;
}

CubicPotential junction_potential(const DerivedJunction& d) {
  return CubicPotential::from_barrier(d.mass, d.Omega0, d.eps_s);
}

EscapePrediction predict_escape_temperature(const JunctionParams& p,
                                            const Units& units,
                                            double uinf_over_E0,
                                            LevelScheme level) {
  EscapePrediction out;
  out.junction = derive_junction(p, units);
  CubicPotential pot = junction_potential(out.junction);
  ResonanceData res = resonance(pot, units, level);
  out.Lambda = res.Lambda;
  out.D = decoherence_strength_junction(out.junction.gamma,
                                        out.junction.Omega0, res.Lambda,
                                        uinf_over_E0);
  double log_r;
  if (out.D >= 1e3) {
    out.regime = SaddleRegime::large_d;
    out.R = 4.0 / (27.0 * out.D);
    log_r = std::log(4.0 / 27.0) - std::log(out.D);
  } else {
    SuppressionResult s = solve_saddle(out.D);
    out.regime = SaddleRegime::exact;
    out.R = s.R;
    log_r = std::log(s.R);
  }
  out.T_esc = out.junction.eps_s / (units.kB * (out.Lambda - log_r));
  return out;
}

InversionResult invert_critical_current(const JunctionParams& nominal,
                                        double escape_temperature_exp,
                                        const Units& units) {
  if (!(escape_temperature_exp > 0.0))
    throw std::invalid_argument(
        "invert_critical_current: escape temperature must be positive");
  DerivedJunction nom = derive_junction(nominal, units);
  const double e = kElementaryCharge;
  const double bias = nominal.bias_current;
  const double cap = nominal.capacitance;
  const double gamma = nom.gamma;  // 1/(RC), independent of the fitted s

  const double gamma_exp =
      nom.Omega0 / (2.0 * kPi) *
      std::exp(-nom.eps_s / (units.kB * escape_temperature_exp));

  const double rho_bar =
      std::sqrt(9.0 * e * e * e / (2.0 * units.hbar * cap * bias));
  const double wp_bias = std::sqrt(2.0 * e * bias / (units.hbar * cap));
  const double prefactor_const = 4.0 / (27.0 * 16.0 * kPi * kPi * kPi);

  auto z_of_s = [&](double s) {
    return rho_bar * std::sqrt(s) * std::pow(1.0 - s * s, -1.25);
  };
  auto lambda_of_kref = [&](double k_ref) {
    return action_factor(k_ref) / (1.0 - 2.0 * zeta_of_k(k_ref));
  };
  auto omega0_of_s = [&](double s) {
    return wp_bias / std::sqrt(s) * std::pow(1.0 - s * s, 0.25);
  };
  // residuals of the two conditions; both zero at the solution
  auto level_residual = [&](double s, double k_ref) {
    return z_of_s(s) - (1.0 - 2.0 * zeta_of_k(k_ref));
  };
  auto rate_residual = [&](double s, double k_ref) {
    double om = omega0_of_s(s);
    return 2.0 * std::log(om) - std::log(2.0 * kPi * gamma) +
           std::log(prefactor_const) - 4.0 * lambda_of_kref(k_ref) -
           std::log(gamma_exp);
  };
  auto kref_of_s = [&](double s) {
    double z = z_of_s(s);
    if (!(z > 0.0 && z < 1.0)) return -1.0;
    return modulus_for_zeta(0.5 * (1.0 - z));
  };

  // 1-d reduction: walk s upward until the ln-rate residual changes sign,
  // then bisect. This brackets the root whenever one exists in (0.9, 1).
  const int scan_n = 400;
  double lo = 0.0, hi = 0.0, prev = 0.0;
  bool have_prev = false;
  double best_abs = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= scan_n; ++i) {
    double s = 0.9 + 0.0999 * i / scan_n;  // stay clear of z >= 1
    double k_ref = kref_of_s(s);
    if (k_ref < 0.0) break;
    double g = rate_residual(s, k_ref);
    best_abs = std::min(best_abs, std::abs(g));
    if (have_prev && prev < 0.0 && g >= 0.0) {
      lo = s - 0.0999 / scan_n;
      hi = s;
      break;
    }
    prev = g;
    have_prev = true;
  }
  if (hi == 0.0)
    throw std::runtime_error(
        "invert_critical_current: no rate-matching solution for s in "
        "(0.9, 1); best |ln-rate residual| = " +
        std::to_string(best_abs));
  for (int i = 0; i < 100; ++i) {
    double mid = 0.5 * (lo + hi);
    (rate_residual(mid, kref_of_s(mid)) < 0.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  double k_ref = kref_of_s(s);
  int iterations = 0;

  // damped 2-d Newton polish on (s, k_ref) with a numeric Jacobian
  for (; iterations < 40; ++iterations) {
    double g1 = level_residual(s, k_ref);
    double g2 = rate_residual(s, k_ref);
    double norm0 = std::abs(g1) + std::abs(g2);
    if (norm0 < 1e-13) break;
    double hs = 1e-8, hk = 1e-8;
    double j11 = (level_residual(s + hs, k_ref) - level_residual(s - hs, k_ref)) / (2 * hs);
    double j12 = (level_residual(s, k_ref + hk) - level_residual(s, k_ref - hk)) / (2 * hk);
    double j21 = (rate_residual(s + hs, k_ref) - rate_residual(s - hs, k_ref)) / (2 * hs);
    double j22 = (rate_residual(s, k_ref + hk) - rate_residual(s, k_ref - hk)) / (2 * hk);
    double det = j11 * j22 - j12 * j21;
    if (det == 0.0) break;
    double ds = -(g1 * j22 - g2 * j12) / det;
    double dk = -(j11 * g2 - j21 * g1) / det;
    double damp = 1.0;
    bool accepted = false;
    for (int back = 0; back < 30; ++back) {
      double sn = s + damp * ds, kn = k_ref + damp * dk;
      if (sn > 0.9 && sn < 1.0 && kn > 0.0 && kn < 0.999 &&
          z_of_s(sn) < 1.0) {
        double n1 = std::abs(level_residual(sn, kn)) +
                    std::abs(rate_residual(sn, kn));
        if (n1 < norm0) {
          s = sn;
          k_ref = kn;
          accepted = true;
          break;
        }
      }
      damp *= 0.5;
    }
    if (!accepted) break;
  }

  InversionResult out;
  out.s = s;
  out.k_ref = k_ref;
  out.critical_current = bias / s;
  out.rho_bar = rho_bar;
  out.Lambda = lambda_of_kref(k_ref);
  out.Gamma_exp = gamma_exp;
  out.residual_match = level_residual(s, k_ref);
  out.residual_rate = rate_residual(s, k_ref);
  out.iterations = iterations;
  return out;
}

}  // namespace tunnelkit
