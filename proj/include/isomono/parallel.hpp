#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

namespace isomono {

/// Execution policy for the data-parallel kernels. Every kernel has a
/// serial path that serves as the reference implementation in tests.
enum class Exec { serial, parallel };

Exec default_exec();
void set_default_exec(Exec exec);
int max_threads();
bool openmp_enabled();

/// Runs body(i) for i in [0, n). Under Exec::parallel the iterations are
/// distributed over OpenMP threads; the first exception thrown by any
/// iteration is rethrown on the calling thread after the loop.
template <class Body>
void parallel_for(std::size_t n, Exec exec, Body&& body) {
  if (exec == Exec::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace isomono
