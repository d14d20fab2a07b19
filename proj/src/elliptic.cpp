#include "tunnelkit/elliptic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tunnelkit {

// Arithmetic-geometric mean. Quadratic convergence; a handful of sweeps
// reach machine precision anywhere away from m = 1.

double elliptic_k(double m) {
  if (!(m >= 0.0 && m < 1.0))
    throw std::domain_error("elliptic_k: parameter must lie in [0, 1)");
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int i = 0; i < 64 && std::abs(a - b) > 4e-17 * a; ++i) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

double elliptic_e(double m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw std::domain_error("elliptic_e: parameter must lie in [0, 1]");
  if (m == 1.0) return 1.0;
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c2sum = 0.5 * m;  // 2^(n-1) c_n^2 accumulated, n = 0 term is m/2
  double weight = 0.5;
  for (int i = 0; i < 64; ++i) {
    double c = 0.5 * (a - b);
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    weight *= 2.0;
    c2sum += weight * c * c;
    if (std::abs(c) < 1e-17 * a) break;
  }
  return std::numbers::pi / (2.0 * a) * (1.0 - c2sum);
}

}  // namespace tunnelkit
