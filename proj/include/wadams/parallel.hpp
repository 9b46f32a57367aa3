#pragma once
// Small OpenMP helper: parallel loops with a runtime serial/parallel switch.
// Reductions always go through a per-index slot buffer that is summed serially,
// so results are bit-identical whether the loop ran serial or parallel.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wadams {

inline bool& parallel_flag() {
  static bool enabled = true;
  return enabled;
}
inline void set_parallel(bool on) { parallel_flag() = on; }
inline bool parallel_enabled() { return parallel_flag(); }

inline int& thread_count() {
  static int n = 0;  // 0 = library default
  return n;
}
inline void set_threads(int n) { thread_count() = n; }

template <class Body>
void parallel_for(std::size_t n, Body&& body) {
#ifdef _OPENMP
  if (parallel_flag() && n > 1) {
    const int nt = thread_count();
    if (nt > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(nt)
      for (long long i = 0; i < (long long)n; ++i) body((std::size_t)i);
    } else {
#pragma omp parallel for schedule(dynamic)
      for (long long i = 0; i < (long long)n; ++i) body((std::size_t)i);
    }
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

// Deterministic map-reduce: slot per index, serial left-to-right sum.
template <class Term>
double parallel_map_sum(std::size_t n, Term&& term) {
  std::vector<double> slot(n);
  parallel_for(n, [&](std::size_t i) { slot[i] = term(i); });
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += slot[i];
  return s;
}

}  // namespace wadams
