#include "qci/entropy.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qci {

namespace {
constexpr double kNegativeFloor = 1e-10;
}

double von_neumann_entropy(const DensityOperator& rho, double tol) {
  return detail::entropy_of_hermitian(rho.matrix(), tol);
}

BiasValue entropy_bias(const Isometry& j, const DensityOperator& rho) {
  if (rho.dim() != j.d_a()) {
    throw std::invalid_argument("entropy_bias: input dimension " + std::to_string(rho.dim()) +
                                " does not match d_a = " + std::to_string(j.d_a()));
  }
  return detail::entropy_bias_raw(j, rho.matrix());
}

std::vector<double> output_spectra_pure(const Isometry& j, const ComplexVector& psi,
                                        double tol) {
  if (psi.size() != j.d_a()) {
    throw std::invalid_argument("output_spectra_pure: vector dimension does not match d_a");
  }
  if (std::abs(psi.norm() - 1.0) > kDefaultTol) {
    throw std::invalid_argument("output_spectra_pure: input vector is not normalized");
  }
  const ComplexVector image = j.matrix() * psi;
  // Squared singular values of the d_b x d_c coefficient matrix are the
  // common spectrum of both outputs.
  ComplexMatrix coeff(j.d_b(), j.d_c());
  for (int ib = 0; ib < j.d_b(); ++ib) {
    for (int ic = 0; ic < j.d_c(); ++ic) {
      coeff(ib, ic) = image(static_cast<Eigen::Index>(ib) * j.d_c() + ic);
    }
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(coeff);
  std::vector<double> spectrum;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double q2 = svd.singularValues()(i) * svd.singularValues()(i);
    if (q2 > tol) spectrum.push_back(q2);
  }
  return spectrum;  // JacobiSVD returns singular values descending
}

namespace detail {

double entropy_of_hermitian(const ComplexMatrix& m, double tol) {
  const Eigen::VectorXd vals = hermitian_eigenvalues(m);
  double bits = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    const double lambda = vals(i);
    if (lambda < -kNegativeFloor) {
      throw std::domain_error("entropy: eigenvalue " + std::to_string(lambda) +
                              " below the negativity floor");
    }
    if (lambda > tol) bits -= lambda * std::log2(lambda);
  }
  return bits;
}

BiasValue entropy_bias_raw(const Isometry& j, const ComplexMatrix& rho) {
  const auto [rho_b, rho_c] = raw_channel_outputs(j, rho);
  const double s_b = entropy_of_hermitian(rho_b);
  const double s_c = entropy_of_hermitian(rho_c);
  return {s_b, s_c, s_b - s_c};
}

}  // namespace detail

}  // namespace qci
