#include "tomo/parallel.hpp"

#include <cstdlib>

#include <omp.h>

namespace tomo {

int thread_limit() {
  if (const char* env = std::getenv("TOMO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

void apply_thread_limit() { omp_set_num_threads(thread_limit()); }

}  // namespace tomo
