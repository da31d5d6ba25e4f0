#pragma once

#include <vector>

#include "qci/channels.hpp"

namespace qci {

/// Entropy cutoff: eigenvalues at or below this contribute zero. Eigenvalues
/// in (-1e-10, tol] are clamped; anything below -1e-10 is rejected.
inline constexpr double kEntropyTol = 1e-12;

/// Von-Neumann entropy in bits (base-2 logarithms throughout).
double von_neumann_entropy(const DensityOperator& rho, double tol = kEntropyTol);

/// Output entropies of a channel pair at one input, and their difference
/// delta = S(rho_b) - S(rho_c): the coherent information of the direct
/// channel at that input.
struct BiasValue {
  double s_b;
  double s_c;
  double delta;
};

BiasValue entropy_bias(const Isometry& j, const DensityOperator& rho);

/// Common nonzero spectrum of both channel outputs for a pure input, i.e.
/// the squared Schmidt coefficients of J|psi>, descending.
std::vector<double> output_spectra_pure(const Isometry& j, const ComplexVector& psi,
                                        double tol = kEntropyTol);

namespace detail {
double entropy_of_hermitian(const ComplexMatrix& m, double tol = kEntropyTol);
BiasValue entropy_bias_raw(const Isometry& j, const ComplexMatrix& rho);
}  // namespace detail

}  // namespace qci
