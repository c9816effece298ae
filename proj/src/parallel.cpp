#include "psfree/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>
#include <thread>

namespace psfree {

int worker_count() {
  if (const char* env = std::getenv("PSFREE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_kernel_threads(int threads) { omp_set_num_threads(threads < 1 ? 1 : threads); }

}  // namespace psfree
