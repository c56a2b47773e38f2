#pragma once

#include <cstdint>

namespace chase {

// Kernel execution policy. Parallel kernels compute in fixed-size chunks
// with per-index random streams and reduce in chunk order, so both policies
// produce identical results; kSerial is the reference path kept for tests
// and for the kernel benchmark.
enum class Exec { kSerial, kParallel };

namespace par {

bool openmp_compiled();
int max_threads();
// True when the policy, build and environment all allow threading and the
// work is large enough to bother. CHASE_SERIAL=1 forces serial.
bool use_parallel(Exec e, std::int64_t work);

inline constexpr std::int64_t kChunk = 1024;

}  // namespace par
}  // namespace chase
