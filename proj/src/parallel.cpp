#include "cuspl/parallel.hpp"

#ifdef CUSPL_HAVE_OPENMP
#include <omp.h>
#endif

namespace cuspl {

namespace {
int g_threads = 0;
}

int thread_count() {
#ifdef CUSPL_HAVE_OPENMP
  return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_count(int n) {
  g_threads = n > 0 ? n : 0;
#ifdef CUSPL_HAVE_OPENMP
  omp_set_num_threads(n > 0 ? n : omp_get_num_procs());
#endif
}

}  // namespace cuspl
