#include "scg/parallel.hpp"

#include <omp.h>

namespace scg {

void set_worker_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int worker_threads() { return omp_get_max_threads(); }

}  // namespace scg
