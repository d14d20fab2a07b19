#include "tunnelkit/wkb_spectrum.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "tunnelkit/elliptic.hpp"

namespace tunnelkit {

namespace {

double q_factor(double k) {
  double k2 = k * k;
  return 0.25 * (1.0 + 14.0 * k2 + k2 * k2);
}

void check_modulus(double k, const char* who) {
  if (!(k >= 0.0 && k < 1.0))
    throw std::domain_error(std::string(who) + ": modulus must lie in [0, 1)");
}

// bisection for a continuous monotone function on [lo, hi]
double bisect_increasing(const std::function<double(double)>& g, double lo,
                         double hi, double target) {
  for (int i = 0; i < 200 && hi - lo > 1e-16 * (1.0 + lo); ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// ---- 15-point Kronrod / 7-point Gauss pair --------------------------------

struct GkNode {
  double x, wk, wg;
};

// positive-half nodes; wg = 0 marks Kronrod-only abscissae
const GkNode kGk15[8] = {
    {0.000000000000000000000000000000000, 0.209482141084727828012999174891714,
     0.417959183673469387755102040816327},
    {0.207784955007898467600689403773245, 0.204432940075298892414161999234649,
     0.0},
    {0.405845151377397166906606412076961, 0.190350578064785409913256402421014,
     0.381830050505118944950369775488975},
    {0.586087235467691130294144838258730, 0.169004726639267902826583426598550,
     0.0},
    {0.741531185599394439863864773280788, 0.140653259715525918745189590510238,
     0.279705391489276667901467771423780},
    {0.864864423359769072789712788640926, 0.104790010322250183839876322541518,
     0.0},
    {0.949107912342758524526189684047851, 0.063092092629978553290700663189204,
     0.129484966168869693270611432679082},
    {0.991455371120812639206854697526329, 0.022935322010529224963732008058970,
     0.0}};

template <class F>
double gk15(const F& f, double a, double b, double& err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double f0 = f(c);
  double k = kGk15[0].wk * f0;
  double g = kGk15[0].wg * f0;
  for (int i = 1; i < 8; ++i) {
    double fp = f(c + h * kGk15[i].x);
    double fm = f(c - h * kGk15[i].x);
    k += kGk15[i].wk * (fp + fm);
    g += kGk15[i].wg * (fp + fm);
  }
  k *= h;
  g *= h;
  err = std::abs(k - g);
  return k;
}

template <class F>
double adaptive_gk(const F& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  struct Seg {
    double a, b;
    int depth;
  };
  std::vector<Seg> todo{{a, b, 0}};
  double total = 0.0;
  double scale = 0.0;
  while (!todo.empty()) {
    Seg s = todo.back();
    todo.pop_back();
    double err = 0.0;
    double v = gk15(f, s.a, s.b, err);
    scale = std::max(scale, std::abs(v));
    if (err <= rel_tol * std::max(std::abs(v), 1e-3 * scale) ||
        s.depth >= 48) {
      total += v;
    } else {
      double m = 0.5 * (s.a + s.b);
      todo.push_back({s.a, m, s.depth + 1});
      todo.push_back({m, s.b, s.depth + 1});
    }
  }
  return total;
}

}  // namespace

double zeta_of_k(double k) {
  if (!(k >= 0.0 && k <= 1.0))
    throw std::domain_error("zeta_of_k: modulus must lie in [0, 1]");
  double k2 = k * k;
  double q = q_factor(k);
  double sq = std::sqrt(q);
  double u = 1.0 + k2;
  return 0.125 * (2.0 + 3.0 * u / sq - u * u * u / (q * sq));
}

double freq_factor(double k) {
  check_modulus(k, "freq_factor");
  double q = q_factor(k);
  return 1.0 / ((2.0 / std::numbers::pi) * std::pow(4.0 * q, 0.25) *
                elliptic_k(k * k));
}

double action_factor(double k) {
  check_modulus(k, "action_factor");
  double k2 = k * k;
  double q = q_factor(k);
  double a = (16.0 / 15.0) * (2.0 - k2) * (2.0 - k2) -
             0.2 * (1.0 - k2) * (21.0 - 5.0 * k2);
  double b = (8.0 / 15.0) * (2.0 - k2) - (1.0 - k2);
  return (27.0 / 8.0) * std::pow(4.0 / q, 1.25) *
         (a * elliptic_e(k2) - (1.0 - k2) * b * elliptic_k(k2));
}

EllipticPoint elliptic_point(double k) {
  return {k, zeta_of_k(k), freq_factor(k), action_factor(k)};
}

double modulus_for_zeta(double zeta_target) {
  if (!(zeta_target > 0.0 && zeta_target < 0.5))
    throw std::domain_error("modulus_for_zeta: target must lie in (0, 1/2)");
  return bisect_increasing([](double k) { return zeta_of_k(k); }, 0.0, 1.0,
                           zeta_target);
}

double reflect_modulus(double k) {
  return modulus_for_zeta(0.5 - zeta_of_k(k));
}

TrappedLevel trapped_level(const CubicPotential& pot, const Units& units,
                           int n) {
  if (n < 0) throw std::invalid_argument("trapped_level: n must be >= 0");
  double eps0 = 0.5 * units.hbar * pot.omega0();
  double target = (1.0 + 2.0 * n) * std::numbers::pi * eps0 / pot.eps_s();
  // action_factor climbs to 18/5 at the barrier top; nothing fits above that
  if (target >= 3.6)
    throw std::domain_error(
        "trapped_level: required well action exceeds the barrier-top value; "
        "level is not trapped");
  double k = bisect_increasing([](double kk) { return action_factor(kk); },
                               1e-12, 1.0 - 1e-12, target);
  return {n, k, 2.0 * pot.eps_s() * zeta_of_k(k)};
}

ResonanceData resonance(const CubicPotential& pot, const Units& units,
                        LevelScheme level, PeriodScheme period) {
  ResonanceData r;
  TrappedLevel gs = trapped_level(pot, units, 0);
  r.k_gs = gs.k;
  r.zeta_gs = zeta_of_k(gs.k);
  r.f_gs = freq_factor(gs.k);
  r.E0 = level == LevelScheme::anharmonic ? gs.energy
                                          : 0.5 * units.hbar * pot.omega0();
  if (!(r.E0 < pot.eps_s()))
    throw std::domain_error("resonance: level position above the barrier");
  // the reflected modulus is pinned to the quantized ground modulus either
  // way; the level scheme only moves the energy dividing the barrier action
  r.k_ref = modulus_for_zeta(0.5 - r.zeta_gs);
  r.F_ref = action_factor(r.k_ref);
  r.Lambda = pot.eps_s() / r.E0 * r.F_ref;
  r.tau = period == PeriodScheme::anharmonic
              ? std::numbers::pi / (pot.omega0() * r.f_gs)
              : std::numbers::pi / pot.omega0();
  r.eps = units.hbar / (4.0 * r.tau) * std::exp(-r.Lambda);
  return r;
}

double phase_shift_derivative(double energy, double E0, double eps) {
  double d = energy - E0;
  return -eps / (d * d + eps * eps);
}

double norm_profile(double energy, double E0, double eps) {
  double d = energy - E0;
  return eps / std::numbers::pi / (d * d + eps * eps);
}

double action(const CubicPotential& pot, double energy, double x_from,
              double x_to, double rel_tol) {
  if (!std::isfinite(energy) || !std::isfinite(x_from) || !std::isfinite(x_to))
    throw std::invalid_argument("action: non-finite input");
  double sign = 1.0;
  if (x_to < x_from) {
    std::swap(x_from, x_to);
    sign = -1.0;
  }
  if (x_from == x_to) return 0.0;
  // substituting x = x_from + u^2 (and mirrored at the top end) turns a
  // simple turning point into a regular endpoint
  double mid = 0.5 * (x_from + x_to);
  auto lower = [&](double u) {
    return 2.0 * u * pot.momentum(energy, x_from + u * u);
  };
  auto upper = [&](double u) {
    return 2.0 * u * pot.momentum(energy, x_to - u * u);
  };
  double s = adaptive_gk(lower, 0.0, std::sqrt(mid - x_from), rel_tol) +
             adaptive_gk(upper, 0.0, std::sqrt(x_to - mid), rel_tol);
  return sign * s;
}

}  // namespace tunnelkit
