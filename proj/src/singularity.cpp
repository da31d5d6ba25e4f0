#include "qci/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qci/rng.hpp"

namespace qci {

ComplexMatrix null_projector(const DensityOperator& rho, double tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix());
  const Eigen::VectorXd vals = solver.eigenvalues();
  const int d = rho.dim();
  ComplexMatrix proj = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (vals(i) <= tol) {
      const auto v = solver.eigenvectors().col(i);
      proj += v * v.adjoint();
    }
  }
  return proj;
}

SingularityRate convex_emergence_rate(const DensityOperator& rho_hat_out,
                                      const DensityOperator& sigma_out, double tol) {
  if (rho_hat_out.dim() != sigma_out.dim()) {
    throw std::invalid_argument("convex_emergence_rate: operand dimensions differ");
  }
  const ComplexMatrix p0 = null_projector(rho_hat_out, tol);
  SingularityRate out;
  if (p0.cwiseAbs().maxCoeff() <= tol) return out;  // full-rank base, nothing emerges

  const ComplexMatrix block = p0 * sigma_out.matrix() * p0;
  const Eigen::VectorXd vals = detail::hermitian_eigenvalues(block);
  for (Eigen::Index i = vals.size() - 1; i >= 0; --i) {
    if (vals(i) > tol) out.coefficients.push_back(vals(i));
  }
  if (!out.coefficients.empty()) {
    // Algebraic identity: the coefficients sum to Tr(P0 sigma).
    out.rate = (p0 * sigma_out.matrix()).trace().real();
  }
  return out;
}

namespace {

/// Polynomial (Neville) extrapolation of the points (x_i, f_i) to x = 0.
double extrapolate_to_zero(const std::vector<double>& x, std::vector<double> f) {
  const std::size_t n = x.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double xi = x[i];
      const double xj = x[i + level];
      f[i] = (xi * f[i + 1] - xj * f[i]) / (xi - xj);
    }
  }
  return f[0];
}

}  // namespace

FittedRate fitted_emergence_rate(const std::function<DensityOperator(double)>& outputs,
                                 int base_null_rank, std::span<const double> eps_grid,
                                 double zero_floor) {
  if (eps_grid.size() < 2) {
    throw std::invalid_argument("fitted_emergence_rate: need at least two grid points");
  }
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (eps_grid[i] <= 1e-9) {
      throw std::invalid_argument("fitted_emergence_rate: grid values must exceed 1e-9");
    }
    if (i > 0 && eps_grid[i] >= eps_grid[i - 1]) {
      throw std::invalid_argument("fitted_emergence_rate: grid must decrease strictly");
    }
  }

  FittedRate out;
  if (base_null_rank <= 0) return out;

  const std::size_t n = eps_grid.size();
  // ratios[i][j] = (i-th smallest eigenvalue at eps_j) / eps_j
  std::vector<std::vector<double>> ratios(static_cast<std::size_t>(base_null_rank),
                                          std::vector<double>(n));
  for (std::size_t g = 0; g < n; ++g) {
    const double eps = eps_grid[g];
    const Eigen::VectorXd vals = detail::hermitian_eigenvalues(outputs(eps).matrix());
    if (vals.size() < base_null_rank) {
      throw std::invalid_argument("fitted_emergence_rate: base_null_rank exceeds dimension");
    }
    for (int i = 0; i < base_null_rank; ++i) {
      ratios[static_cast<std::size_t>(i)][g] = std::max(vals(i), 0.0) / eps;
    }
  }

  const std::vector<double> grid(eps_grid.begin(), eps_grid.end());
  std::vector<double> slopes;
  for (int i = 0; i < base_null_rank; ++i) {
    const auto& f = ratios[static_cast<std::size_t>(i)];
    const double slope = extrapolate_to_zero(grid, f);
    if (std::abs(slope) < zero_floor || std::abs(f.back()) < zero_floor) {
      continue;  // the eigenvalue vanishes faster than linearly
    }
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    const double spread = (*hi - *lo) / std::abs(slope);
    out.spreads.push_back(spread);
    if (spread > 0.05) out.usable = false;
    slopes.push_back(slope);
  }
  std::sort(slopes.begin(), slopes.end(), std::greater<double>());
  out.rate.coefficients = std::move(slopes);
  for (const double e : out.rate.coefficients) out.rate.rate += e;
  return out;
}

PositivityCertificate positivity_certificate(const Isometry& j, const ComplexVector& psi,
                                             const DensityOperator& sigma, double tol) {
  if (psi.size() != j.d_a() || sigma.dim() != j.d_a()) {
    throw std::invalid_argument("positivity_certificate: dimension mismatch with d_a");
  }
  const DensityOperator rho_hat = DensityOperator::pure(psi, tol);
  const auto [rho_hat_b, rho_hat_c] = channel_outputs(j, rho_hat);
  const auto [sigma_b, sigma_c] = channel_outputs(j, sigma);

  SingularityRate detail_b = convex_emergence_rate(rho_hat_b, sigma_b, tol);
  SingularityRate detail_c = convex_emergence_rate(rho_hat_c, sigma_c, tol);
  const double delta_base = entropy_bias(j, rho_hat).delta;

  CertTarget target = detail_b.rate >= detail_c.rate ? CertTarget::direct
                                                     : CertTarget::complement;
  Conclusion conclusion = Conclusion::inconclusive;
  if (std::abs(delta_base) <= tol) {
    if (detail_b.rate > detail_c.rate + kRateMargin) {
      target = CertTarget::direct;
      conclusion = Conclusion::positive;
    } else if (detail_c.rate > detail_b.rate + kRateMargin) {
      target = CertTarget::complement;
      conclusion = Conclusion::positive;
    }
  }
  return PositivityCertificate{target,
                               conclusion,
                               psi,
                               sigma,
                               detail_b.rate,
                               detail_c.rate,
                               delta_base,
                               std::move(detail_b),
                               std::move(detail_c)};
}

std::vector<ComplexVector> scan_candidates(int d_a, int samples, std::uint64_t seed) {
  std::vector<ComplexVector> cands;
  for (int i = 0; i < d_a; ++i) cands.push_back(basis_ket(d_a, i));

  // Uniform superpositions with per-component phases in {1, i}; the leading
  // phase is fixed to 1 (a global phase changes nothing).
  const double amp = 1.0 / std::sqrt(static_cast<double>(d_a));
  const std::uint64_t patterns = 1ULL << (d_a - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    ComplexVector v(d_a);
    v(0) = amp;
    for (int k = 1; k < d_a; ++k) {
      v(k) = (mask >> (k - 1)) & 1ULL ? Complex(0.0, amp) : Complex(amp, 0.0);
    }
    cands.push_back(std::move(v));
  }

  SplitMix64 rng = fork_rng(seed, 0x5ca11ULL);
  for (int k = 0; k < samples; ++k) cands.push_back(random_ket(rng, d_a));
  return cands;
}

namespace {

int schmidt_rank(const Isometry& j, const ComplexVector& psi, double tol) {
  ComplexMatrix coeff(j.d_b(), j.d_c());
  const ComplexVector image = j.matrix() * psi;
  for (int ib = 0; ib < j.d_b(); ++ib) {
    for (int ic = 0; ic < j.d_c(); ++ic) {
      coeff(ib, ic) = image(static_cast<Eigen::Index>(ib) * j.d_c() + ic);
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(coeff);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) * svd.singularValues()(i) > tol) ++rank;
  }
  return rank;
}

}  // namespace

std::optional<PositivityCertificate> rank_witness_scan(const Isometry& j, int samples,
                                                       std::uint64_t seed, double tol,
                                                       Exec exec) {
  const auto [rb, rc] = minimal_output_dims(j, tol);
  if (rb == rc) return std::nullopt;  // the rank criterion is silent here
  const int target_rank = std::min(rb, rc);

  const std::vector<ComplexVector> cands = scan_candidates(j.d_a(), samples, seed);
  std::vector<char> hits(cands.size(), 0);
  for_indexed(cands.size(), exec,
              [&](std::size_t i) { hits[i] = schmidt_rank(j, cands[i], tol) == target_rank; });

  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (hits[i]) {
      return positivity_certificate(j, cands[i], DensityOperator::maximally_mixed(j.d_a()),
                                    tol);
    }
  }
  return std::nullopt;
}

PositivitySearchResult positivity_search(const Isometry& j, int samples, std::uint64_t seed,
                                         double tol) {
  const int d_a = j.d_a();
  std::vector<DensityOperator> sigmas;
  sigmas.push_back(DensityOperator::maximally_mixed(d_a));
  for (int i = 0; i < d_a; ++i) sigmas.push_back(DensityOperator::pure(basis_ket(d_a, i)));

  PositivitySearchResult result;
  for (const ComplexVector& psi : scan_candidates(d_a, samples, seed)) {
    for (const DensityOperator& sigma : sigmas) {
      PositivityCertificate cert = positivity_certificate(j, psi, sigma, tol);
      if (cert.conclusion != Conclusion::positive) continue;
      if (cert.target == CertTarget::direct && !result.direct) {
        result.direct = cert;
      } else if (cert.target == CertTarget::complement && !result.complement) {
        result.complement = cert;
      }
      if (result.direct && result.complement) return result;
    }
  }
  return result;
}

DimensionVerdict dimension_criterion(int d_a, int d_b, int d_c) {
  if (d_a <= 1) {
    throw std::invalid_argument(
        "dimension_criterion: d_a <= 1 defines a channel with zero capacity");
  }
  if (d_b < 1 || d_c < 1) {
    throw std::invalid_argument("dimension_criterion: output dimensions must be positive");
  }
  if (d_b > d_a * (d_c - 1)) return DimensionVerdict::direct_positive;
  if (d_c > d_a * (d_b - 1)) return DimensionVerdict::complement_positive;
  return DimensionVerdict::silent;
}

StateFamily convex_family(const DensityOperator& rho_hat, const DensityOperator& sigma) {
  if (rho_hat.dim() != sigma.dim()) {
    throw std::invalid_argument("convex_family: dimensions differ");
  }
  const ComplexMatrix hat = rho_hat.matrix();
  const ComplexMatrix sig = sigma.matrix();
  return StateFamily{
      rho_hat,
      [hat, sig](double eps) {
        if (!(eps >= 0.0 && eps <= 1.0)) {
          throw std::invalid_argument("convex family: eps must lie in [0, 1]");
        }
        return DensityOperator((1.0 - eps) * hat + eps * sig);
      },
      StateFamily::Kind::convex};
}

}  // namespace qci
