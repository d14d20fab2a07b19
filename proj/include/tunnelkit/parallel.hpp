#pragma once

namespace tunnelkit {

// Worker count used by the OpenMP kernels. Honors TUNNELKIT_THREADS when set
// to a positive integer, otherwise falls back to the OpenMP default (1 in a
// non-OpenMP build). Numerical results are bitwise independent of this value.
int worker_count();

}  // namespace tunnelkit
