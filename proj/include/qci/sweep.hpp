#pragma once

#include <cstddef>

namespace qci {

/// Execution policy for grid sweeps, restart batches and witness scans.
/// Every sweep writes its result into a slot indexed by the loop counter,
/// so serial and parallel runs produce bit-identical output.
enum class Exec { serial, parallel };

template <typename Body>
void for_indexed(std::size_t n, Exec exec, Body&& body) {
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      body(static_cast<std::size_t>(i));
    }
    return;
  }
#else
  (void)exec;
#endif
  for (std::size_t i = 0; i < n; ++i) {
    body(i);
  }
}

}  // namespace qci
