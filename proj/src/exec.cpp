#include "chase/exec.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chase::par {

bool openmp_compiled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

bool use_parallel(Exec e, std::int64_t work) {
  if (e == Exec::kSerial) return false;
  if (!openmp_compiled() || max_threads() <= 1) return false;
  static const bool forced_serial = [] {
    const char* v = std::getenv("CHASE_SERIAL");
    return v != nullptr && v[0] == '1';
  }();
  if (forced_serial) return false;
  return work >= 2 * kChunk;
}

}  // namespace chase::par
