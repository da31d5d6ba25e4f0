#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace qci {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Default threshold separating exact zeros from small positive eigenvalues.
/// Rank counting, null-space projectors and certificate margins all hinge on
/// this distinction, so every entry point threads it through explicitly.
inline constexpr double kDefaultTol = 1e-10;

/// Which tensor factor survives a partial trace.
enum class Keep { first, second };

/// Hermitian eigendecomposition with eigenvalues sorted descending and one
/// projector per cluster of eigenvalues closer than the clustering tolerance.
/// Degenerate eigenspaces are kept whole: individual eigenvectors inside a
/// cluster are basis-dependent, the cluster projector is not.
struct HermitianSpectrum {
  std::vector<double> eigenvalues;        // descending, one per dimension
  std::vector<ComplexMatrix> projectors;  // one per cluster
  std::vector<int> cluster_sizes;         // aligned with projectors
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduce an operator on a d1*d2 space to the kept factor. Composite index
/// convention is first-major: (i1, i2) -> i1*d2 + i2.
ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2, Keep keep);

/// Input is symmetrized to (m + m^dag)/2 before decomposition; partial traces
/// of numerically computed conjugations carry ~1e-16 scale asymmetry.
HermitianSpectrum hermitian_spectrum(const ComplexMatrix& m, double tol = kDefaultTol);

/// Number of eigenvalues above tol. Throws std::domain_error if an eigenvalue
/// falls below -tol (input was not positive semidefinite).
int numerical_rank(const ComplexMatrix& m, double tol = kDefaultTol);

ComplexVector basis_ket(int dim, int index);
bool all_finite(const ComplexMatrix& m);
double hermiticity_gap(const ComplexMatrix& m);

namespace detail {
/// Ascending eigenvalues of (m + m^dag)/2.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);
}  // namespace detail

}  // namespace qci
