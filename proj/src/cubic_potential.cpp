#include "tunnelkit/cubic_potential.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tunnelkit {

CubicPotential::CubicPotential(double mass, double omega0, double coupling,
                               PlateauSpec plateau)
    : mass_(mass), omega0_(omega0), coupling_(coupling), plateau_(plateau) {
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("CubicPotential: mass must be positive");
  if (!(omega0 > 0.0) || !std::isfinite(omega0))
    throw std::invalid_argument("CubicPotential: omega0 must be positive");
  if (!(coupling > 0.0) || !std::isfinite(coupling))
    throw std::invalid_argument("CubicPotential: coupling must be positive");
  if (!(plateau.u_inf >= 0.0) || !std::isfinite(plateau.u_inf))
    throw std::invalid_argument("CubicPotential: u_inf must be >= 0");

  x_s_ = 2.0 * mass_ * omega0_ * omega0_ / coupling_;
  eps_s_ = 2.0 * mass_ * mass_ * mass_ * std::pow(omega0_, 6) /
           (3.0 * coupling_ * coupling_);
  x_exit_ = 1.5 * x_s_;

  x_match_ = plateau.x_match > 0.0 ? plateau.x_match : 3.0 * x_exit_;
  width_ = plateau.width > 0.0 ? plateau.width : x_exit_;
  if (x_match_ < x_exit_)
    throw std::invalid_argument(
        "CubicPotential: the crossfade must start at or beyond x_exit");
}

CubicPotential CubicPotential::from_barrier(double mass, double omega0,
                                            double barrier,
                                            PlateauSpec plateau) {
  if (!(barrier > 0.0) || !std::isfinite(barrier))
    throw std::invalid_argument("CubicPotential: barrier must be positive");
  double coupling = std::sqrt(2.0 * mass * mass * mass * std::pow(omega0, 6) /
                              (3.0 * barrier));
  return CubicPotential(mass, omega0, coupling, plateau);
}

double CubicPotential::bare(double x) const {
  return 0.5 * mass_ * omega0_ * omega0_ * x * x -
         coupling_ / 6.0 * x * x * x;
}

double CubicPotential::bare_derivative(double x) const {
  return mass_ * omega0_ * omega0_ * x - 0.5 * coupling_ * x * x;
}

double CubicPotential::evaluate(double x) const {
  if (x <= x_match_) return bare(x);
  double end = x_match_ + width_;
  if (x >= end) return -plateau_.u_inf;
  double u = (x - x_match_) / width_;
  double h = u * u * (3.0 - 2.0 * u);
  return (1.0 - h) * bare(x) - h * plateau_.u_inf;
}

double CubicPotential::derivative(double x) const {
  if (x <= x_match_) return bare_derivative(x);
  double end = x_match_ + width_;
  if (x >= end) return 0.0;
  double u = (x - x_match_) / width_;
  double h = u * u * (3.0 - 2.0 * u);
  double dh = 6.0 * u * (1.0 - u) / width_;
  return (1.0 - h) * bare_derivative(x) - dh * (bare(x) + plateau_.u_inf);
}

CubicPotential::TurningPoints CubicPotential::turning_points(
    double energy) const {
  if (!(energy > 0.0 && energy < eps_s_))
    throw std::domain_error(
        "turning_points: energy must lie strictly between 0 and eps_s");

  // U(x) = E has three real roots for 0 < E < eps_s; in the shifted variable
  // they are x_k = (x_exit/3)(1 + 2 cos(theta/3 - 2 pi k/3)) with
  // cos(theta) = 1 - 2 E / eps_s.
  double arg = 1.0 - 2.0 * energy / eps_s_;
  double theta = std::acos(arg);
  double c = x_exit_ / 3.0;
  auto root = [&](int k) {
    return c * (1.0 + 2.0 * std::cos(theta / 3.0 -
                                     2.0 * std::numbers::pi * k / 3.0));
  };
  TurningPoints tp{root(2), root(1), root(0)};

  // a guarded Newton polish on the bare cubic cleans up the last couple of
  // ulps from the trig evaluation
  auto polish = [&](double x) {
    for (int i = 0; i < 3; ++i) {
      double f = bare(x) - energy;
      double df = bare_derivative(x);
      if (df == 0.0) break;
      double step = f / df;
      if (std::abs(step) > 0.1 * x_exit_) break;
      x -= step;
    }
    return x;
  };
  tp.x_left = polish(tp.x_left);
  tp.x_right = polish(tp.x_right);
  tp.x_out = polish(tp.x_out);
  return tp;
}

double CubicPotential::momentum(double energy, double x) const {
  return std::sqrt(2.0 * mass_ * std::abs(evaluate(x) - energy));
}

double CubicPotential::momentum_at_infinity(double energy) const {
  double e = energy + plateau_.u_inf;
  if (e < 0.0)
    throw std::domain_error(
        "momentum_at_infinity: energy below the plateau level");
  return std::sqrt(2.0 * mass_ * e);
}

}  // namespace tunnelkit
