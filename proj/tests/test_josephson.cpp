#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tunnelkit/closed_rates.hpp"
#include "tunnelkit/constants.hpp"
#include "tunnelkit/josephson.hpp"
#include "tunnelkit/spectral_evolver.hpp"

using namespace tunnelkit;

namespace {
// shunted junction used throughout: bias close to critical, moderate Q
const JunctionParams kRef{24.710e-6, 24.873e-6, 4.28e-12, 9.3};
}  // namespace

TEST_CASE("junction mapping rejects unphysical inputs") {
  Units u = Units::si();
  JunctionParams p = kRef;
  p.bias_current = 25.0e-6;  // above critical
  CHECK_THROWS_AS(derive_junction(p, u), std::domain_error);
  p = kRef;
  p.capacitance = 0.0;
  CHECK_THROWS_AS(derive_junction(p, u), std::invalid_argument);
  p = kRef;
  p.resistance = -1.0;
  CHECK_THROWS_AS(derive_junction(p, u), std::invalid_argument);
}

TEST_CASE("derived quantities satisfy their defining identities") {
  Units u = Units::si();
  auto d = derive_junction(kRef, u);
  const double e = kElementaryCharge;
  CHECK(d.s == doctest::Approx(kRef.bias_current / kRef.critical_current)
                   .epsilon(1e-14));
  CHECK(d.kappa * d.kappa == doctest::Approx(1.0 - d.s * d.s).epsilon(1e-13));
  CHECK(d.E_J == doctest::Approx(u.hbar * kRef.critical_current / (2.0 * e))
                     .epsilon(1e-14));
  CHECK(d.gamma == doctest::Approx(1.0 / (9.3 * 4.28e-12)).epsilon(1e-14));
  CHECK(d.eps_s ==
        doctest::Approx((2.0 / 3.0) * d.E_J * std::pow(d.kappa, 3.0))
            .epsilon(1e-13));
  // plasma frequency softened by the bias tilt, two equivalent forms
  CHECK(d.Omega0 == doctest::Approx(d.omega_p0 * std::sqrt(d.kappa))
                        .epsilon(1e-13));
  CHECK(d.Omega0 ==
        doctest::Approx(
            std::sqrt(3.0 * d.eps_s / (2.0 * d.kappa * d.kappa * d.mass)))
            .epsilon(1e-12));
  CHECK(d.eps0 == doctest::Approx(0.5 * u.hbar * d.Omega0).epsilon(1e-14));
}

TEST_CASE("scaling both currents together leaves the tilt invariant") {
  Units u = Units::si();
  auto a = derive_junction(kRef, u);
  JunctionParams scaled = kRef;
  scaled.bias_current *= 3.7;
  scaled.critical_current *= 3.7;
  auto b = derive_junction(scaled, u);
  CHECK(b.s == doctest::Approx(a.s).epsilon(1e-14));
  CHECK(b.kappa == doctest::Approx(a.kappa).epsilon(1e-14));
}

TEST_CASE("the mapped potential carries the junction scales") {
  Units u = Units::si();
  auto d = derive_junction(kRef, u);
  auto pot = junction_potential(d);
  CHECK(pot.eps_s() == doctest::Approx(d.eps_s).epsilon(1e-12));
  CHECK(pot.omega0() == doctest::Approx(d.Omega0).epsilon(1e-14));
  CHECK(pot.mass() == doctest::Approx(d.mass).epsilon(1e-14));
}

TEST_CASE("strong-damping escape temperature lands on the reference point") {
  Units u = Units::si();
  auto pred = predict_escape_temperature(kRef, u);
  CHECK(pred.regime == SaddleRegime::large_d);
  CHECK(pred.D > 1e13);
  CHECK(pred.D < 1e14);
  CHECK(pred.Lambda == doctest::Approx(8.459).epsilon(2.5e-3));
  CHECK(pred.T_esc == doctest::Approx(14.255e-3).epsilon(0.01));
  CHECK(pred.R == doctest::Approx(4.0 / (27.0 * pred.D)).epsilon(1e-12));
  // returned critical current bound: s < 1 so I_c > I trivially via derive
  CHECK(pred.junction.s < 1.0);
}

TEST_CASE("weak damping falls back to the full saddle and meets the closed rate") {
  Units u = Units::si();
  auto d = derive_junction(kRef, u);
  auto pot = junction_potential(d);
  // choose the shunt so the dimensionless damping strength is 1e-6
  auto res_h = resonance(pot, u, LevelScheme::harmonic);
  double pi3 = 3.14159265358979323846;
  pi3 = pi3 * pi3 * pi3;
  double gamma_target = 1e-6 * d.Omega0 / (16.0 * pi3 * std::exp(3.0 * res_h.Lambda));
  JunctionParams weak = kRef;
  weak.resistance = 1.0 / (gamma_target * kRef.capacitance);
  auto pred = predict_escape_temperature(weak, u, 0.0, LevelScheme::harmonic);
  CHECK(pred.regime == SaddleRegime::exact);
  CHECK(pred.D == doctest::Approx(1e-6).epsilon(1e-10));
  CHECK(pred.R > 0.98);
  CHECK(pred.T_esc ==
        doctest::Approx(escape_temperature_wkb(pot, u)).epsilon(5e-3));
}

TEST_CASE("critical-current inversion reproduces the fitted operating point") {
  Units u = Units::si();
  auto inv = invert_critical_current(kRef, 0.045, u);
  CHECK(inv.s == doctest::Approx(0.9968).epsilon(5.1e-4));
  CHECK(inv.k_ref == doctest::Approx(0.1162).epsilon(9e-3));
  CHECK(inv.critical_current == doctest::Approx(24.789e-6).epsilon(1e-3));
  CHECK(inv.rho_bar == doctest::Approx(1.288e-3).epsilon(1e-3));
  CHECK(std::abs(inv.residual_match) < 1e-10);
  CHECK(std::abs(inv.residual_rate) < 1e-10);
  CHECK(inv.critical_current > kRef.bias_current);
  CHECK_THROWS_AS(invert_critical_current(kRef, -0.01, u),
                  std::invalid_argument);
  // far too fast an observed escape: no operating point in (0.9, 1)
  CHECK_THROWS_AS(invert_critical_current(kRef, 1.0, u), std::runtime_error);
}

TEST_CASE("rate round trip recovers the critical current") {
  // compute the open-system rate at the nominal operating point, express it
  // as an escape temperature, and invert: the fitted I_c must come back
  Units u = Units::si();
  auto nom = derive_junction(kRef, u);
  const double e = kElementaryCharge;
  double rho_bar = std::sqrt(9.0 * e * e * e /
                             (2.0 * u.hbar * kRef.capacitance *
                              kRef.bias_current));
  double s = nom.s;
  double z = rho_bar * std::sqrt(s) * std::pow(1.0 - s * s, -1.25);
  REQUIRE(z < 1.0);
  double k_ref = modulus_for_zeta(0.5 * (1.0 - z));
  double lambda = action_factor(k_ref) / (1.0 - 2.0 * zeta_of_k(k_ref));
  double pi = 3.14159265358979323846;
  double gamma_rt = nom.Omega0 * nom.Omega0 / (2.0 * pi * nom.gamma) *
                    (4.0 / (27.0 * 16.0 * pi * pi * pi)) *
                    std::exp(-4.0 * lambda);
  double t_rt = nom.eps_s /
                (u.kB * std::log(nom.Omega0 / (2.0 * pi * gamma_rt)));
  auto inv = invert_critical_current(kRef, t_rt, u);
  CHECK(inv.critical_current ==
        doctest::Approx(kRef.critical_current).epsilon(5e-4));
  CHECK(inv.s == doctest::Approx(s).epsilon(5e-4));
}
