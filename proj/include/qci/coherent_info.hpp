#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qci/singularity.hpp"

namespace qci {

/// Default eps probes for confirming a predicted entropy-bias increase:
/// large enough that the eps*log(eps) term beats 1e-9 margins, small enough
/// that it still dominates.
inline constexpr std::array<double, 3> kDefaultEpsGrid = {1e-2, 1e-3, 1e-4};

/// Geometric grid used when fitting emergence rates.
inline constexpr std::array<double, 3> kDefaultFitGrid = {1e-4, 1e-5, 1e-6};

struct OptimizationResult {
  double value;  // bits; best entropy bias found
  DensityOperator argmax;
  int restarts_used;
  bool converged;  // best two restarts agree within tol
  double s_b;
  double s_c;
};

/// Local maximization of the entropy bias of the direct channel over all
/// input density operators, parametrized as rho = V V^dag / Tr(V V^dag) with
/// V an unconstrained complex square factor. Derivative-free simplex descent
/// per seeded restart, then a polish loop on the best point: gradient ascent,
/// snapping near-zero eigenvalues to exact zeros (maximizers often sit on a
/// rank-deficient face), and escape rotations of support vectors into null
/// directions, whose eps*log(eps) gains are invisible to interior gradients.
/// To optimize the complement, pass swap_outputs(j).
OptimizationResult maximize_bias(const Isometry& j, int restarts, std::uint64_t seed,
                                 double tol = 1e-7, Exec exec = Exec::parallel);

struct QutritMax {
  double value;   // bits
  double w_star;  // maximizer in (0, 1)
  bool flat;      // a near-tie was detected away from the maximizer
};

/// Coherent information of the qutrit channel via its one-parameter
/// reduction: maximize the bias over rho = (1-w)[0] + w[1] by golden-section
/// search (ties broken toward smaller w). For s > 1/2 the relabeling
/// equivalence s <-> 1-s maps the reduced family to (1-w)[0] + w[2], which is
/// what gets maximized there.
QutritMax q1_qutrit(double s, double grid_tol = 1e-9);

/// Empirical validation that the one-parameter family attains the global
/// maximum: true iff `samples` random full-rank qutrit inputs never beat
/// q1_qutrit(s) by more than 1e-8.
bool qutrit_reduction_check(double s, int samples, std::uint64_t seed);

enum class Verdict { nonadditive, not_shown };

/// One point of the non-additivity sweep for the amplitude damping channel
/// (damping probability p, zero capacity for p >= 1/2) in parallel with the
/// qutrit channel (parameter s).
struct NonAdditivityReport {
  double p;
  double s;
  double w_star;
  double k;      // (1-s)(1-w*) / (w* + (1-s)(1-w*)) < 1
  double p_bar;  // 1/(1+k) > 1/2
  double rate_b;  // closed form (1-p) w*
  double rate_c;  // closed form p k w*
  double fitted_rate_b;
  double fitted_rate_c;
  bool fitted_usable;
  double delta0;     // bias at eps = 0; equals q1_qutrit(s).value
  double delta_eps;  // max bias over the probed eps grid
  double eps_used;   // argmax
  Verdict verdict;   // nonadditive iff rate_b > rate_c and delta_eps > delta0
};

NonAdditivityReport nonadditivity_report(double p, double s,
                                         std::span<const double> eps_grid = kDefaultEpsGrid);

/// The correlated input family behind the report, on the 6-dimensional joint
/// input: rho(eps) = (1-w)[00] + w[chi_eps] with
/// |chi_eps> = sqrt(1-eps)|01> + sqrt(eps)|12>.
StateFamily correlated_input_family(double w);

struct ThresholdPoint {
  double s;
  double w_star;
  double k;
  double p_bar;
};

/// Per-point w*, k and the damping-probability threshold p_bar = 1/(1+k)
/// below which the direct-side singularity is the stronger one.
std::vector<ThresholdPoint> threshold_curve(std::span<const double> s_grid,
                                            Exec exec = Exec::parallel);

}  // namespace qci
