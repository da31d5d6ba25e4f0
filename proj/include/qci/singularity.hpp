#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qci/channels.hpp"
#include "qci/entropy.hpp"
#include "qci/sweep.hpp"

namespace qci {

/// Two emergence rates are considered distinct only when they differ by more
/// than this margin; equal rates prove nothing.
inline constexpr double kRateMargin = 1e-9;

/// Hermitian idempotent spanning the eigenvectors of rho with eigenvalue at
/// most tol. Its rank is dim - numerical_rank(rho).
ComplexMatrix null_projector(const DensityOperator& rho, double tol = kDefaultTol);

/// Leading-order linear growth of eigenvalues emerging from zero. The
/// entropy of the family then grows like rate * |eps*log2(eps)|.
struct SingularityRate {
  std::vector<double> coefficients;  // descending, one per emerging eigenvalue
  double rate = 0.0;                 // their sum
};

/// Exact emergence coefficients for the convex family
/// (1-eps)*rho_hat + eps*sigma at a channel output: the nonzero eigenvalues
/// of P0 sigma P0 where P0 projects on the null space of rho_hat. The total
/// rate equals Tr(P0 sigma).
SingularityRate convex_emergence_rate(const DensityOperator& rho_hat_out,
                                      const DensityOperator& sigma_out,
                                      double tol = kDefaultTol);

/// Emergence coefficients recovered numerically from a family of outputs that
/// need not be convex-linear in eps. The base_null_rank smallest eigenvalues
/// at each grid point are divided by eps and polynomially extrapolated to
/// eps -> 0. `usable` is false when some ratio spreads by more than 5% across
/// the grid, signalling emergence that is not linear at these scales.
struct FittedRate {
  SingularityRate rate;
  bool usable = true;
  std::vector<double> spreads;  // relative, one per nonzero coefficient
};

FittedRate fitted_emergence_rate(const std::function<DensityOperator(double)>& outputs,
                                 int base_null_rank, std::span<const double> eps_grid,
                                 double zero_floor = 1e-8);

enum class CertTarget { direct, complement };
enum class Conclusion { positive, inconclusive };

/// Verdict of the log-singularity comparison along the convex family
/// (1-eps)[psi] + eps*sigma. A strictly larger emergence rate on one output
/// certifies positive coherent information for that channel; equality decides
/// nothing and is never reported as positive.
struct PositivityCertificate {
  CertTarget target;
  Conclusion conclusion;
  ComplexVector witness_pure;
  DensityOperator witness_sigma;
  double rate_b;
  double rate_c;
  double delta_base;  // entropy bias at [psi]; zero for any pure input
  SingularityRate detail_b;
  SingularityRate detail_c;
};

PositivityCertificate positivity_certificate(const Isometry& j, const ComplexVector& psi,
                                             const DensityOperator& sigma,
                                             double tol = kDefaultTol);

/// Search for a pure input whose direct output has rank min(d_b, d_c) over
/// the minimal dims; such a witness certifies the larger-output side.
/// Candidates are deterministic: computational basis kets, uniform
/// superpositions with per-component phases in {1, i}, then `samples` seeded
/// pseudo-random kets. Returns the certificate for the first witness with
/// sigma = I/d_a, or nothing if the minimal dims coincide or no witness is
/// found (a valid outcome: absence of a witness proves nothing).
std::optional<PositivityCertificate> rank_witness_scan(const Isometry& j, int samples,
                                                       std::uint64_t seed,
                                                       double tol = kDefaultTol,
                                                       Exec exec = Exec::parallel);

/// Deterministic list of scan candidates, exposed for tests and audits.
std::vector<ComplexVector> scan_candidates(int d_a, int samples, std::uint64_t seed);

/// Small deterministic search over (psi, sigma) pairs for one certificate per
/// side. Covers channels with equal output dimensions, where the rank
/// criterion is silent. sigma candidates are I/d_a and the basis dyads.
struct PositivitySearchResult {
  std::optional<PositivityCertificate> direct;
  std::optional<PositivityCertificate> complement;
};

PositivitySearchResult positivity_search(const Isometry& j, int samples, std::uint64_t seed,
                                         double tol = kDefaultTol);

enum class DimensionVerdict { direct_positive, complement_positive, silent };

/// Purely arithmetic positivity check from the dimension triple: direct
/// coherent information is positive whenever d_b > d_a*(d_c - 1), the
/// complement's whenever d_c > d_a*(d_b - 1). Throws for d_a <= 1 (such a
/// channel has zero capacity trivially).
DimensionVerdict dimension_criterion(int d_a, int d_b, int d_c);

/// A one-parameter curve of input states with a distinguished base point.
struct StateFamily {
  enum class Kind { convex, general };
  DensityOperator base;
  std::function<DensityOperator(double)> evaluate;
  Kind kind;
};

StateFamily convex_family(const DensityOperator& rho_hat, const DensityOperator& sigma);

}  // namespace qci
