#include "tunnelkit/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tunnelkit {

int worker_count() {
  if (const char* env = std::getenv("TUNNELKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 4096)
      return static_cast<int>(v);
    // unparsable values fall through to the default
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace tunnelkit
