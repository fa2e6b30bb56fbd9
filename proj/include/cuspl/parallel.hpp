#pragma once

// Thread control for the OpenMP kernels. Every parallel kernel reduces its
// partial results in a fixed block order, so results do not depend on the
// thread count.

#include <cstddef>

namespace cuspl {

enum class Execution { serial, parallel };

/// Threads used by parallel kernels (1 when built without OpenMP).
int thread_count();

/// n <= 0 restores the machine default.
void set_thread_count(int n);

/// Block length used by the fixed-order reductions.
constexpr std::size_t kReductionBlock = 4096;

}  // namespace cuspl
