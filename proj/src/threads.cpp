#include "aot/threads.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace aot {

int thread_count() {
  static const int cap = [] {
    if (const char* env = std::getenv("AOT_THREADS")) {
      try {
        const int v = std::stoi(env);
        if (v >= 1) return v;
      } catch (...) {
      }
    }
    return omp_get_max_threads();
  }();
  return cap;
}

}  // namespace aot
