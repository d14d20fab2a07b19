#pragma once

#include <complex>
#include <vector>

namespace tunnelkit {

// Stationary-point analysis of the reduced damping kernel
//   l(r1, r2) = i (r1 - r2) + 2 D (1/(1 + r1^2) - 1/(1 + r2^2))^2
// on the conjugate ansatz r1 = xi - i eta, r2 = conj(r1), eta in (0, 1).
// The long-time decay of the persistence amplitude goes as exp(-2 R t),
// t in units of hbar/eps, with
//   R = eta (1 - 16 D xi^2 eta [(1 + xi^2 - eta^2)^2 + 4 xi^2 eta^2]^-2).

// xi^2 from the real part of the stationarity condition:
// 3 xi^2 = 2 sqrt(1 - eta^2 + eta^4) - 1 - eta^2, eta in (0, 1].
double xi_squared(double eta);

// Gradients of the kernel in the two arguments; both vanish at the saddle.
// They obey gradient_2(r1, r2) = -conj(gradient_1(conj(r2), conj(r1))).
std::complex<double> saddle_gradient_1(double D, std::complex<double> r1,
                                       std::complex<double> r2);
std::complex<double> saddle_gradient_2(double D, std::complex<double> r1,
                                       std::complex<double> r2);

enum class SaddleRegime { exact, small_d, large_d };

struct SuppressionResult {
  double D = 0;
  double eta = 0, xi = 0;
  double R = 0;
  SaddleRegime regime = SaddleRegime::exact;
  double residual = 0;  // |gradient_1| at the reported point
};

// Lowest positive-eta root of the stationarity condition at damping D > 0.
SuppressionResult solve_saddle(double D);

// Limiting branches: R = 1 - (3/2) (D/2)^(1/3) and R = 4 / (27 D).
SuppressionResult suppression_small_d(double D);
SuppressionResult suppression_large_d(double D);

// Log-spaced sweep [d_min, d_max], endpoints included; rows in D order.
std::vector<SuppressionResult> suppression_table(double d_min, double d_max,
                                                 int points);

}  // namespace tunnelkit
