#pragma once

#include <cstddef>
#include <cstdint>

namespace tomo {

/// Selects between the OpenMP kernels and their serial reference loops. Both
/// run the same per-item code, so outputs are bitwise identical.
enum class Exec { serial, parallel };

/// Thread cap: TOMO_THREADS if set and positive, else the OpenMP default.
int thread_limit();

/// Applies TOMO_THREADS to the OpenMP runtime. Safe to call repeatedly.
void apply_thread_limit();

template <class Body>
void for_each_index(Exec exec, std::int64_t count, Body&& body) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) body(i);
  } else {
    for (std::int64_t i = 0; i < count; ++i) body(i);
  }
}

}  // namespace tomo
