#pragma once

namespace tunnelkit {

// Complete elliptic integrals in the parameter convention m = k^2.
// Arithmetic-geometric-mean evaluation, relative accuracy better than 1e-12
// over the admissible range. elliptic_k needs m in [0, 1); elliptic_e
// accepts m in [0, 1] (E(1) = 1).
double elliptic_k(double m);
double elliptic_e(double m);

}  // namespace tunnelkit
