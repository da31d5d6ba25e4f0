// Serial vs OpenMP timings for the sweep kernels, with a result checksum so
// the two paths can be compared for bit-identical output.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qci/coherent_info.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Fn>
void time_both(const char* label, Fn&& run) {
  const auto t_serial = Clock::now();
  const double checksum_serial = run(qci::Exec::serial);
  const double serial = seconds_since(t_serial);

  const auto t_parallel = Clock::now();
  const double checksum_parallel = run(qci::Exec::parallel);
  const double parallel = seconds_since(t_parallel);

  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", label, serial,
              parallel, serial / parallel,
              checksum_serial == checksum_parallel ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available; both runs are serial\n");
#endif

  std::vector<double> s_grid;
  for (int i = 0; i <= 80; ++i) s_grid.push_back(0.5 * i / 80.0);
  time_both("threshold_curve (81 pts)", [&](qci::Exec exec) {
    double checksum = 0.0;
    for (const auto& pt : qci::threshold_curve(s_grid, exec)) checksum += pt.p_bar;
    return checksum;
  });

  const qci::Isometry qutrit = qci::build_qutrit(0.3);
  time_both("maximize_bias (24 restarts)", [&](qci::Exec exec) {
    return qci::maximize_bias(qutrit, 24, 7, 1e-7, exec).value;
  });

  const qci::Isometry erasure =
      qci::build_generalized_erasure(qci::build_qubit_family(0.5, 0.25), 0.5);
  time_both("rank_witness_scan (4096 kets)", [&](qci::Exec exec) {
    const auto cert = qci::rank_witness_scan(erasure, 4096, 11, qci::kDefaultTol, exec);
    return cert ? cert->rate_c : -1.0;
  });

  return 0;
}
