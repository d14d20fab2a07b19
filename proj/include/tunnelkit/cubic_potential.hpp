#pragma once

namespace tunnelkit {

// Metastable cubic well
//   U(x) = (1/2) M Omega0^2 x^2 - (lambda/6) x^3,
// crossfaded to a flat plateau U = -u_inf beyond x_match so that scattering
// states have a well defined momentum at infinity. The crossfade window
// starts past the exit point, so turning points and barrier actions never
// see it.
struct PlateauSpec {
  double u_inf = 0.0;    // plateau depth, U(x -> infinity) = -u_inf
  double x_match = 0.0;  // start of the crossfade window; 0 means 3 * x_exit
  double width = 0.0;    // window width; 0 means x_exit
};

class CubicPotential {
 public:
  CubicPotential(double mass, double omega0, double coupling,
                 PlateauSpec plateau = {});

  // Same well specified through the barrier height instead of the coupling.
  static CubicPotential from_barrier(double mass, double omega0,
                                     double barrier, PlateauSpec plateau = {});

  double mass() const { return mass_; }
  double omega0() const { return omega0_; }
  double coupling() const { return coupling_; }
  double u_inf() const { return plateau_.u_inf; }
  double x_match() const { return x_match_; }
  double blend_width() const { return width_; }

  double x_s() const { return x_s_; }        // barrier top position
  double eps_s() const { return eps_s_; }    // barrier height U(x_s)
  double x_exit() const { return x_exit_; }  // far-side zero of the bare cubic

  double evaluate(double x) const;    // U(x), including the plateau crossfade
  double derivative(double x) const;  // dU/dx

  struct TurningPoints {
    double x_left, x_right, x_out;
  };
  // Classical turning points at energy E in (0, eps_s):
  // x_left < 0 < x_right < x_s < x_out < x_exit. Throws std::domain_error
  // outside that energy range.
  TurningPoints turning_points(double energy) const;

  // Local momentum sqrt(2 M |U(x) - E|); valid on either side of a turning
  // point.
  double momentum(double energy, double x) const;
  // sqrt(2 M (E + u_inf)); throws std::domain_error when E < -u_inf.
  double momentum_at_infinity(double energy) const;

 private:
  double bare(double x) const;
  double bare_derivative(double x) const;

  double mass_, omega0_, coupling_;
  PlateauSpec plateau_;
  double x_match_, width_;
  double x_s_, eps_s_, x_exit_;
};

}  // namespace tunnelkit
