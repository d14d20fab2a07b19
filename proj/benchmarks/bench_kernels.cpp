// Timing harness: parallel kernels against the serial reference paths.
// Prints best-of-N wall times and the speedup; also cross-checks that both
// paths produce identical bits (they share the loop bodies).
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstring>
#include <functional>

#include "tunnelkit/parallel.hpp"
#include "tunnelkit/spectral_evolver.hpp"

using namespace tunnelkit;
using clock_type = std::chrono::steady_clock;

namespace {

double best_of(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = clock_type::now();
    body();
    auto t1 = clock_type::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-24s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n",
              name, 1e3 * serial_s, 1e3 * parallel_s, serial_s / parallel_s);
}

bool same_bits(const SpectralField& a, const SpectralField& b) {
  return std::memcmp(a.data.data(), b.data.data(),
                     a.data.size() * sizeof(std::complex<double>)) == 0;
}

}  // namespace

int main() {
  std::printf("workers: %d (set TUNNELKIT_THREADS to change)\n\n",
              worker_count());

  const int n = 1401;
  SpectralField f0 = init_false_vacuum(0.0, 1.0, 20.0, n);

  // exact damped step
  {
    PhaseShiftModel m;
    m.D = 0.7;
    SpectralField fs = f0, fp = f0;
    double ts = best_of(5, [&] { serial::evolve_phase_shift(fs, m, 0.01); });
    double tp = best_of(5, [&] { evolve_phase_shift(fp, m, 0.01); });
    report("phase-shift step", ts, tp);
    if (!same_bits(fs, fp)) {
      std::printf("MISMATCH: phase-shift paths differ\n");
      return 1;
    }
  }

  // overlap sum
  {
    SpectralField f = f0;
    PhaseShiftModel m;
    m.D = 0.7;
    evolve_phase_shift(f, m, 1.0);
    volatile double sink = 0.0;
    double ts = best_of(5, [&] { sink = serial::persistence(f, f0); });
    double ps = serial::persistence(f, f0);
    double tp = best_of(5, [&] { sink = persistence(f, f0); });
    double pp = persistence(f, f0);
    (void)sink;
    report("persistence sum", ts, tp);
    if (ps != pp) {
      std::printf("MISMATCH: persistence paths differ\n");
      return 1;
    }
  }

  // transport steps
  {
    const int np = 401;
    SpectralField base;
    base.rep = SpectralField::Rep::momentum;
    base.axis.resize(np);
    for (int i = 0; i < np; ++i) base.axis[i] = -6.0 + 12.0 * i / (np - 1);
    base.data.resize(static_cast<std::size_t>(np) * np);
    for (int i = 0; i < np; ++i)
      for (int j = 0; j < np; ++j)
        base.at(i, j) =
            std::exp(-(base.axis[i] * base.axis[i] +
                       base.axis[j] * base.axis[j]) / 4.0);
    KramersModel m;
    m.gamma = 0.05;
    m.sigma2 = 1.0;
    m.E0 = 1.0;
    m.eps = 0.4;
    m.u_inf = 0.5;
    double dt = 0.9 * kramers_max_step(base, m);
    SpectralField fs, fp;
    double ts = best_of(3, [&] {
      fs = base;
      serial::evolve_kramers_local(fs, m, 20.0 * dt, dt);
    });
    double tp = best_of(3, [&] {
      fp = base;
      evolve_kramers_local(fp, m, 20.0 * dt, dt);
    });
    report("transport (20 steps)", ts, tp);
    if (!same_bits(fs, fp)) {
      std::printf("MISMATCH: transport paths differ\n");
      return 1;
    }
  }

  return 0;
}
