#pragma once

#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace volterra {

// Selects between the serial reference loop and the OpenMP kernel. Both paths
// run the same per-index body, so for bodies that write only their own slot
// the results are bitwise identical.
enum class Execution { Serial, Parallel };

template <class Body>
void for_each_index(Execution exec, long begin, long end, Body&& body) {
  if (exec == Execution::Serial || end - begin < 2) {
    for (long k = begin; k < end; ++k) body(k);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(static)
  for (long k = begin; k < end; ++k) {
    try {
      body(k);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace volterra
