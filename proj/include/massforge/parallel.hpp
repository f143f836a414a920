#pragma once

// Thin OpenMP wrappers: a thread cap honoring MASSFORGE_THREADS, an
// order-preserving parallel map, and a parallel counter.  Each parallel kernel
// has a serial twin with identical semantics so results can be compared.

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace massforge {

// Threads to use: MASSFORGE_THREADS when set (clamped to the hardware count),
// otherwise the OpenMP default; 1 in builds without OpenMP.
int thread_cap();

template <class T, class Fn>
std::vector<T> ordered_serial_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

template <class T, class Fn>
std::vector<T> ordered_parallel_map(std::size_t n, Fn&& fn) {
#ifndef _OPENMP
  return ordered_serial_map<T>(n, std::forward<Fn>(fn));
#else
  std::vector<T> out(n);
  std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
  for (long i = 0; i < static_cast<long>(n); ++i) {
    if (eptr) continue;
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      if (!eptr) eptr = std::current_exception();
    }
  }
  if (eptr) std::rethrow_exception(eptr);
  return out;
#endif
}

template <class Pred>
long serial_count(std::size_t n, Pred&& pred) {
  long c = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (pred(i)) ++c;
  return c;
}

template <class Pred>
long parallel_count(std::size_t n, Pred&& pred) {
#ifndef _OPENMP
  return serial_count(n, std::forward<Pred>(pred));
#else
  long total = 0;
  std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(static) num_threads(thread_cap()) \
    reduction(+ : total)
  for (long i = 0; i < static_cast<long>(n); ++i) {
    if (eptr) continue;
    try {
      if (pred(static_cast<std::size_t>(i))) ++total;
    } catch (...) {
#pragma omp critical
      if (!eptr) eptr = std::current_exception();
    }
  }
  if (eptr) std::rethrow_exception(eptr);
  return total;
#endif
}

}  // namespace massforge
