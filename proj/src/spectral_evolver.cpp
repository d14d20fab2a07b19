#include "tunnelkit/spectral_evolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "tunnelkit/parallel.hpp"
#include "tunnelkit/wkb_spectrum.hpp"

namespace tunnelkit {

namespace {

using cd = std::complex<double>;

// All kernels run the same loop body whether threaded or not (the OpenMP if
// clause), so serial and parallel results are bitwise identical by
// construction: node updates are write-once and reductions are combined in
// fixed row order.

void evolve_phase_impl(SpectralField& f, const PhaseShiftModel& m, double dt,
                       bool par) {
  const int n = f.n();
  const int nw = par ? worker_count() : 1;
#pragma omp parallel for schedule(static) num_threads(nw) if (par)
  for (int i = 0; i < n; ++i) {
    cd* row = &f.data[static_cast<std::size_t>(i) * n];
    const double e1 = f.axis[i];
    for (int j = 0; j < n; ++j) {
      row[j] *= std::exp(-kernel(m, e1, f.axis[j]) * dt);
    }
  }
}

double persistence_impl(const SpectralField& cur, const SpectralField& init,
                        bool par) {
  if (cur.n() != init.n())
    throw std::invalid_argument("persistence: mismatched grids");
  const int n = cur.n();
  std::vector<double> row_sum(n);
  const int nw = par ? worker_count() : 1;
#pragma omp parallel for schedule(static) num_threads(nw) if (par)
  for (int i = 0; i < n; ++i) {
    const cd* a = &cur.data[static_cast<std::size_t>(i) * n];
    const cd* b = &init.data[static_cast<std::size_t>(i) * n];
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
    }
    row_sum[i] = acc;
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += row_sum[i];
  double d = cur.step();
  return total * d * d;
}

// exact local factor of the momentum transport: free phase plus dephasing
void kramers_local_half(SpectralField& f, const KramersModel& m, double halfdt,
                        bool par) {
  const int n = f.n();
  std::vector<cd> phase(n, cd(1.0, 0.0));
  if (m.terms.phase) {
    for (int i = 0; i < n; ++i) {
      double p = f.axis[i];
      phase[i] = std::exp(cd(0.0, -p * p * halfdt / (2.0 * m.mass * m.hbar)));
    }
  }
  std::vector<double> dd(n, 0.0);
  const bool deph = m.terms.dephasing && m.gamma > 0.0 && m.sigma2 > 0.0;
  if (deph) {
    for (int i = 0; i < n; ++i) {
      double p = f.axis[i];
      double e = p * p / (2.0 * m.mass) - m.u_inf;
      dd[i] = p / m.mass * phase_shift_derivative(e, m.E0, m.eps);
    }
  }
  const double kdeph = m.gamma * m.mass * m.sigma2 * halfdt;
  const int nw = par ? worker_count() : 1;
#pragma omp parallel for schedule(static) num_threads(nw) if (par)
  for (int i = 0; i < n; ++i) {
    cd* row = &f.data[static_cast<std::size_t>(i) * n];
    for (int j = 0; j < n; ++j) {
      cd factor = phase[i] * std::conj(phase[j]);
      if (deph) {
        double d = dd[i] - dd[j];
        factor *= std::exp(-kdeph * d * d);
      }
      row[j] *= factor;
    }
  }
}

// explicit centered step for friction drift and momentum diffusion,
// replicated-edge (outflow) boundaries
void kramers_fd_step(SpectralField& f, std::vector<cd>& scratch,
                     const KramersModel& m, double dt, bool par) {
  const int n = f.n();
  const double dp = f.step();
  const double kdiff = m.terms.diffusion ? m.gamma * m.mass * m.sigma2 : 0.0;
  const bool drift = m.terms.drift && m.gamma != 0.0;
  if (kdiff == 0.0 && !drift) return;
  scratch.resize(f.data.size());
  auto cl = [n](int i) { return std::clamp(i, 0, n - 1); };
  const int nw = par ? worker_count() : 1;
#pragma omp parallel for schedule(static) num_threads(nw) if (par)
  for (int i = 0; i < n; ++i) {
    const int im = cl(i - 1), ip = cl(i + 1);
    for (int j = 0; j < n; ++j) {
      const int jm = cl(j - 1), jp = cl(j + 1);
      const cd c = f.at(i, j);
      cd rhs(0.0, 0.0);
      if (drift) {
        auto g = [&](int a, int b) {
          return (f.axis[a] + f.axis[b]) * f.at(a, b);
        };
        rhs += m.gamma / 2.0 *
               (g(ip, j) - g(im, j) + g(i, jp) - g(i, jm)) / (2.0 * dp);
      }
      if (kdiff != 0.0) {
        cd lap = f.at(ip, j) + f.at(im, j) + f.at(i, jp) + f.at(i, jm) -
                 4.0 * c;
        cd cross = f.at(ip, jp) - f.at(ip, jm) - f.at(im, jp) + f.at(im, jm);
        rhs += kdiff * (lap + 0.5 * cross) / (dp * dp);
      }
      scratch[static_cast<std::size_t>(i) * n + j] = c + dt * rhs;
    }
  }
  f.data.swap(scratch);
}

void evolve_kramers_impl(SpectralField& f, const KramersModel& m,
                         double t_final, double dt, bool par) {
  if (f.rep != SpectralField::Rep::momentum)
    throw std::invalid_argument(
        "evolve_kramers_local: field must be in momentum representation");
  if (!(dt > 0.0) || !(t_final >= 0.0))
    throw std::invalid_argument("evolve_kramers_local: bad time arguments");
  double dt_max = kramers_max_step(f, m);
  if (dt > dt_max * (1.0 + 1e-9))
    throw std::invalid_argument(
        "evolve_kramers_local: dt exceeds the stability bound");
  std::vector<cd> scratch;
  long nfull = static_cast<long>(std::floor(t_final / dt + 1e-9));
  double rem = t_final - nfull * dt;
  for (long s = 0; s < nfull; ++s) {
    kramers_local_half(f, m, 0.5 * dt, par);
    kramers_fd_step(f, scratch, m, dt, par);
    kramers_local_half(f, m, 0.5 * dt, par);
  }
  if (rem > 1e-12 * dt) {
    kramers_local_half(f, m, 0.5 * rem, par);
    kramers_fd_step(f, scratch, m, rem, par);
    kramers_local_half(f, m, 0.5 * rem, par);
  }
}

}  // namespace

SpectralField init_false_vacuum(double E0, double eps, double half_width,
                                int points) {
  if (!(eps > 0.0))
    throw std::invalid_argument("init_false_vacuum: eps must be positive");
  if (!(half_width >= 5.0))
    throw std::invalid_argument(
        "init_false_vacuum: half_width below 5 truncates the resonance");
  if (points < 16)
    throw std::invalid_argument("init_false_vacuum: need at least 16 points");
  SpectralField f;
  f.rep = SpectralField::Rep::energy;
  f.axis.resize(points);
  double h = 2.0 * half_width * eps / (points - 1);
  for (int i = 0; i < points; ++i)
    f.axis[i] = E0 - half_width * eps + h * i;
  std::vector<double> w(points);
  double z = 0.0;
  for (int i = 0; i < points; ++i) {
    w[i] = norm_profile(f.axis[i], E0, eps);
    z += w[i] * h;
  }
  f.data.resize(static_cast<std::size_t>(points) * points);
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      f.at(i, j) = std::sqrt(w[i] * w[j]) / z;
    }
  }
  return f;
}

PhaseShiftModel PhaseShiftModel::physical(double E0, double eps, double gamma,
                                          double sigma2, double E0_plus_uinf,
                                          double hbar) {
  if (!(eps > 0.0) || !(hbar > 0.0))
    throw std::invalid_argument("PhaseShiftModel: eps and hbar must be > 0");
  PhaseShiftModel m;
  m.E0 = E0;
  m.eps = eps;
  m.hbar = hbar;
  m.D = decoherence_strength(gamma, sigma2, E0_plus_uinf, eps, hbar);
  return m;
}

std::complex<double> kernel(const PhaseShiftModel& m, double E1, double E2) {
  double r1 = (E1 - m.E0) / m.eps;
  double r2 = (E2 - m.E0) / m.eps;
  double u1 = 1.0 / (1.0 + r1 * r1);
  double u2 = 1.0 / (1.0 + r2 * r2);
  double du = u1 - u2;
  return {2.0 * m.D * du * du * m.eps / m.hbar, (E1 - E2) / m.hbar};
}

void evolve_phase_shift(SpectralField& f, const PhaseShiftModel& m,
                        double dt) {
  evolve_phase_impl(f, m, dt, true);
}

double persistence(const SpectralField& current, const SpectralField& initial) {
  return persistence_impl(current, initial, true);
}

double kramers_max_step(const SpectralField& f, const KramersModel& m) {
  double dp = f.step();
  double p_max = 0.0;
  for (double p : f.axis) p_max = std::max(p_max, std::abs(p));
  double bound = std::numeric_limits<double>::infinity();
  double kdiff = m.gamma * m.mass * m.sigma2;
  if (m.terms.diffusion && kdiff > 0.0)
    bound = std::min(bound, 0.2 * dp * dp / kdiff);
  if (m.terms.drift && m.gamma > 0.0 && p_max > 0.0)
    bound = std::min(bound, 0.25 * dp / (m.gamma * p_max));
  if (m.terms.phase && p_max > 0.0)
    bound = std::min(bound, 0.25 * m.hbar * m.mass / (p_max * p_max));
  return bound;
}

void evolve_kramers_local(SpectralField& f, const KramersModel& m,
                          double t_final, double dt) {
  evolve_kramers_impl(f, m, t_final, dt, true);
}

Diagnostics diagnostics(const SpectralField& f, double mass, double u_inf) {
  const int n = f.n();
  const double d = f.step();
  Diagnostics out;
  for (int i = 0; i < n; ++i) {
    double wgt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    double c = f.at(i, i).real();
    double e, meas;
    if (f.rep == SpectralField::Rep::energy) {
      e = f.axis[i];
      meas = d;
    } else {
      double p = f.axis[i];
      e = p * p / (2.0 * mass) - u_inf;
      meas = d / mass;
    }
    out.norm += wgt * c * meas;
    out.mean_energy += wgt * e * c * meas;
  }
  return out;
}

DecoherenceScales decoherence_scales(double gamma, double sigma2, double mass,
                                     double E0_plus_uinf, double eps,
                                     double hbar, double alpha) {
  if (!(gamma > 0.0) || !(sigma2 > 0.0) || !(mass > 0.0) ||
      !(E0_plus_uinf > 0.0) || !(eps > 0.0) || !(hbar > 0.0) || !(alpha > 0.0))
    throw std::invalid_argument("decoherence_scales: inputs must be positive");
  DecoherenceScales s;
  s.alpha = alpha;
  s.tau_relax = 1.0 / gamma;
  s.lambda_thermal = hbar / (2.0 * std::sqrt(sigma2 * mass));
  s.l_decoh = alpha * alpha * hbar * std::sqrt(E0_plus_uinf) /
              (2.0 * eps * std::sqrt(mass));
  double ratio = s.lambda_thermal / s.l_decoh;
  s.tau_decoh = s.tau_relax * ratio * ratio;
  s.tau_tunn = hbar / eps;
  s.D = decoherence_strength(gamma, sigma2, E0_plus_uinf, eps, hbar);
  return s;
}

double decoherence_strength(double gamma, double sigma2, double E0_plus_uinf,
                            double eps, double hbar) {
  return gamma * hbar * sigma2 * E0_plus_uinf / (eps * eps * eps);
}

double decoherence_strength_junction(double gamma, double Omega0,
                                     double Lambda, double uinf_over_E0) {
  const double pi = std::numbers::pi;
  return 16.0 * pi * pi * pi * gamma / Omega0 * (1.0 + uinf_over_E0) *
         std::exp(3.0 * Lambda);
}

namespace serial {

void evolve_phase_shift(SpectralField& f, const PhaseShiftModel& m,
                        double dt) {
  evolve_phase_impl(f, m, dt, false);
}

double persistence(const SpectralField& current, const SpectralField& initial) {
  return persistence_impl(current, initial, false);
}

void evolve_kramers_local(SpectralField& f, const KramersModel& m,
                          double t_final, double dt) {
  evolve_kramers_impl(f, m, t_final, dt, false);
}

}  // namespace serial

}  // namespace tunnelkit
