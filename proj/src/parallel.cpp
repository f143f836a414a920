#include "massforge/parallel.hpp"

#include <cstdlib>
#include <string>

namespace massforge {

int thread_cap() {
#ifndef _OPENMP
  return 1;
#else
  int hw = omp_get_max_threads();
  const char* env = std::getenv("MASSFORGE_THREADS");
  if (!env || !*env) return hw;
  try {
    int want = std::stoi(std::string(env));
    if (want < 1) return 1;
    return want < hw ? want : hw;
  } catch (...) {
    return hw;
  }
#endif
}

}  // namespace massforge
