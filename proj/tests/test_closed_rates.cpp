#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "tunnelkit/closed_rates.hpp"
#include "tunnelkit/constants.hpp"
#include "tunnelkit/cubic_potential.hpp"
#include "tunnelkit/wkb_spectrum.hpp"

using namespace tunnelkit;

TEST_CASE("instanton rate pieces obey their defining relations") {
  Units u = Units::natural();
  auto pot = CubicPotential::from_barrier(1.0, 1.0, 9.0);
  auto r = instanton_rate(pot, u);
  double eps0 = 0.5 * u.hbar * pot.omega0();
  CHECK(r.Lambda0 == doctest::Approx(3.6 * pot.eps_s() / eps0).epsilon(1e-14));
  CHECK(r.a_q * r.a_q == doctest::Approx(120.0 * 3.14159265358979323846 * r.Lambda0)
                             .epsilon(1e-13));
  CHECK(r.Gamma == doctest::Approx(pot.omega0() / (2 * 3.14159265358979323846) *
                                   r.a_q * std::exp(-r.Lambda0))
                       .epsilon(1e-13));
}

TEST_CASE("instanton exponent scales linearly with barrier height") {
  Units u = Units::natural();
  auto a = instanton_rate(CubicPotential::from_barrier(1.0, 1.0, 6.0), u);
  auto b = instanton_rate(CubicPotential::from_barrier(1.0, 1.0, 12.0), u);
  CHECK(b.Lambda0 == doctest::Approx(2.0 * a.Lambda0).epsilon(1e-13));
}

TEST_CASE("wkb rate equals 2 eps / hbar") {
  Units u = Units::natural();
  auto pot = CubicPotential::from_barrier(1.0, 1.0, 9.0);
  auto res = resonance(pot, u);
  CHECK(wkb_rate(res, u) == doctest::Approx(2.0 * res.eps / u.hbar).epsilon(1e-14));
}

TEST_CASE("escape temperature inverts the thermal-activation form") {
  Units u = Units::si();
  double eps_s = 8.0e-23, tau = 3.0e-11;
  // pick a rate, recover T, and re-evaluate the Arrhenius expression
  double T = 0.040;
  double rate = std::exp(-eps_s / (u.kB * T)) / (2.0 * tau);
  CHECK(escape_temperature(rate, eps_s, tau, u) == doctest::Approx(T).epsilon(1e-12));
  // and the other way round
  double T2 = escape_temperature(1.0e4, eps_s, tau, u);
  CHECK(std::exp(-eps_s / (u.kB * T2)) / (2.0 * tau) ==
        doctest::Approx(1.0e4).epsilon(1e-10));
}

TEST_CASE("escape temperature rejects rates at or above the attempt scale") {
  Units u = Units::si();
  CHECK_THROWS_AS(escape_temperature(1.0 / (2.0 * 3.0e-11), 8e-23, 3.0e-11, u),
                  std::domain_error);
  CHECK_THROWS_AS(escape_temperature(1e20, 8e-23, 3.0e-11, u), std::domain_error);
  CHECK_THROWS_AS(escape_temperature(0.0, 8e-23, 3.0e-11, u), std::invalid_argument);
  CHECK_THROWS_AS(escape_temperature(1e3, -1.0, 3.0e-11, u), std::invalid_argument);
}

TEST_CASE("closed-form escape temperatures match the generic inversion") {
  Units u = Units::si();
  double eps_s = 0.58974 * kBoltzmann;
  double omega0 = 44.918e9;
  double mass = kHbar * kHbar * 4.28e-12 /
                (4.0 * kElementaryCharge * kElementaryCharge);
  auto pot = CubicPotential::from_barrier(mass, omega0, eps_s);

  auto inst = instanton_rate(pot, u);
  double tau_h = 3.14159265358979323846 / omega0;
  CHECK(escape_temperature_instanton(pot, u) ==
        doctest::Approx(escape_temperature(inst.Gamma, pot.eps_s(), tau_h, u))
            .epsilon(1e-12));

  // the wkb variant: anharmonic shape factors, zero-point divisor in the exponent
  auto res = resonance(pot, u);
  double eps0 = 0.5 * u.hbar * omega0;
  double rate = omega0 * res.f_gs / (2 * 3.14159265358979323846) *
                std::exp(-(pot.eps_s() / eps0) * res.F_ref);
  CHECK(escape_temperature_wkb(pot, u) ==
        doctest::Approx(escape_temperature(rate, pot.eps_s(), tau_h, u))
            .epsilon(1e-10));
}
