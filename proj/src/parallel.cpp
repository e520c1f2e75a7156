#include "isomono/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace isomono {

namespace {
std::atomic<Exec> g_default{Exec::parallel};
}

Exec default_exec() { return g_default.load(); }

void set_default_exec(Exec exec) { g_default.store(exec); }

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace isomono
