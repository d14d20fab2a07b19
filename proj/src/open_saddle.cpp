#include "tunnelkit/open_saddle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tunnelkit/parallel.hpp"

namespace tunnelkit {

namespace {

// The stationarity condition in logarithmic form,
//   g(eta) = ln(32 D xi^2 eta B1) - 3 ln(B2),
// B1 = A + 4 eta^2 (1 - eta^2), B2 = A + 4 xi^2 eta^2,
// A = (1 + xi^2 - eta^2)^2, with xi^2 = xi_squared(eta). Well behaved over
// the full D range (the polynomial form over/underflows past ~1e10).
// g runs from -inf at eta -> 0+ to +inf at eta -> 1-; the lowest zero is the
// physical saddle. eta = 1 itself is a spurious degenerate root of the
// polynomial form, which the log form never touches.
double g_of_eta(double d, double eta) {
  double x2 = xi_squared(eta);
  double a = 1.0 + x2 - eta * eta;
  a *= a;
  double b1 = a + 4.0 * eta * eta * (1.0 - eta * eta);
  double b2 = a + 4.0 * x2 * eta * eta;
  return std::log(32.0 * d * x2 * eta * b1) - 3.0 * std::log(b2);
}

}  // namespace

double xi_squared(double eta) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("xi_squared: eta must lie in (0, 1]");
  double e2 = eta * eta;
  double v = (2.0 * std::sqrt(1.0 - e2 + e2 * e2) - 1.0 - e2) / 3.0;
  return std::max(v, 0.0);
}

std::complex<double> saddle_gradient_1(double D, std::complex<double> r1,
                                       std::complex<double> r2) {
  std::complex<double> w1 = 1.0 + r1 * r1;
  std::complex<double> w2 = 1.0 + r2 * r2;
  std::complex<double> diff = 1.0 / w1 - 1.0 / w2;
  return std::complex<double>(0.0, 1.0) - 8.0 * D * diff * r1 / (w1 * w1);
}

std::complex<double> saddle_gradient_2(double D, std::complex<double> r1,
                                       std::complex<double> r2) {
  std::complex<double> w1 = 1.0 + r1 * r1;
  std::complex<double> w2 = 1.0 + r2 * r2;
  std::complex<double> diff = 1.0 / w1 - 1.0 / w2;
  return std::complex<double>(0.0, 1.0) - 8.0 * D * diff * r2 / (w2 * w2);
}

SuppressionResult solve_saddle(double D) {
  if (!(D > 0.0) || !std::isfinite(D))
    throw std::invalid_argument("solve_saddle: D must be positive and finite");

  // scan grid: log-spaced towards 0 (large D pushes the root to
  // eta ~ 8/(27 D)) and towards 1 (small D: eta ~ 1 - (D/2)^(1/3))
  const int half = 400;
  std::vector<double> etas;
  etas.reserve(2 * half);
  double eta_min = std::min(1e-7, 8.0 / (27.0 * D) * 1e-3);
  double delta_min = std::min(1e-9, std::cbrt(D / 2.0) * 1e-3);
  for (int i = 0; i < half; ++i) {
    double t = static_cast<double>(i) / (half - 1);
    etas.push_back(eta_min * std::pow(0.7 / eta_min, t));
  }
  for (int i = half - 1; i >= 0; --i) {
    double t = static_cast<double>(i) / (half - 1);
    double delta = delta_min * std::pow(0.3 / delta_min, t);
    etas.push_back(1.0 - delta);
  }

  double lo = 0.0, hi = 0.0;
  double prev = g_of_eta(D, etas.front());
  for (std::size_t i = 1; i < etas.size(); ++i) {
    double cur = g_of_eta(D, etas[i]);
    if (prev < 0.0 && cur >= 0.0) {
      lo = etas[i - 1];
      hi = etas[i];
      break;
    }
    prev = cur;
  }
  if (hi == 0.0)
    throw std::runtime_error("solve_saddle: no sign change located");

  for (int i = 0; i < 200 && hi - lo > 1e-17 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (g_of_eta(D, mid) < 0.0 ? lo : hi) = mid;
  }
  double eta = 0.5 * (lo + hi);

  // Newton polish on g (numeric slope), kept inside the bracket
  for (int i = 0; i < 4; ++i) {
    double h = 1e-7 * eta;
    double g0 = g_of_eta(D, eta);
    double slope = (g_of_eta(D, eta + h) - g_of_eta(D, eta - h)) / (2.0 * h);
    if (!(slope != 0.0)) break;
    double next = eta - g0 / slope;
    if (!(next > lo && next < hi)) break;
    eta = next;
  }

  SuppressionResult out;
  out.D = D;
  out.eta = eta;
  double x2 = xi_squared(eta);
  out.xi = std::sqrt(x2);
  double a = 1.0 + x2 - eta * eta;
  a *= a;
  double b2 = a + 4.0 * x2 * eta * eta;
  out.R = eta * (1.0 - 16.0 * D * x2 * eta / (b2 * b2));
  out.regime = SaddleRegime::exact;
  std::complex<double> r1(out.xi, -eta);
  out.residual = std::abs(saddle_gradient_1(D, r1, std::conj(r1)));
  return out;
}

SuppressionResult suppression_small_d(double D) {
  if (!(D > 0.0)) throw std::invalid_argument("suppression_small_d: D <= 0");
  double delta = std::cbrt(D / 2.0);
  SuppressionResult out;
  out.D = D;
  out.eta = 1.0 - delta;
  out.xi = delta;
  out.R = 1.0 - 1.5 * delta;
  out.regime = SaddleRegime::small_d;
  std::complex<double> r1(out.xi, -out.eta);
  out.residual = std::abs(saddle_gradient_1(D, r1, std::conj(r1)));
  return out;
}

SuppressionResult suppression_large_d(double D) {
  if (!(D > 0.0)) throw std::invalid_argument("suppression_large_d: D <= 0");
  SuppressionResult out;
  out.D = D;
  out.eta = 8.0 / (27.0 * D);
  out.xi = 1.0 / std::sqrt(3.0);
  out.R = 4.0 / (27.0 * D);
  out.regime = SaddleRegime::large_d;
  std::complex<double> r1(out.xi, -out.eta);
  out.residual = std::abs(saddle_gradient_1(D, r1, std::conj(r1)));
  return out;
}

std::vector<SuppressionResult> suppression_table(double d_min, double d_max,
                                                 int points) {
  if (!(d_min > 0.0) || !(d_max > d_min))
    throw std::invalid_argument("suppression_table: need 0 < d_min < d_max");
  if (points < 2)
    throw std::invalid_argument("suppression_table: need at least 2 points");
  std::vector<SuppressionResult> rows(points);
  double l0 = std::log(d_min);
  double dl = (std::log(d_max) - l0) / (points - 1);
  int nw = worker_count();
#pragma omp parallel for schedule(static) num_threads(nw)
  for (int i = 0; i < points; ++i) {
    rows[i] = solve_saddle(std::exp(l0 + dl * i));
  }
  return rows;
}

}  // namespace tunnelkit
