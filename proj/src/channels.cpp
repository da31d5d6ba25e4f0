#include "qci/channels.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>
#include <string>

namespace qci {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(x));
  }
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix m, double tol) {
  require(m.rows() == m.cols(), "DensityOperator: matrix must be square");
  require(m.rows() >= 1, "DensityOperator: dimension must be positive");
  require(all_finite(m), "DensityOperator: entries must be finite");
  require(hermiticity_gap(m) <= tol, "DensityOperator: matrix is not Hermitian within tol");
  m_ = 0.5 * (m + m.adjoint());
  const double trace = m_.trace().real();
  require(std::abs(trace - 1.0) <= tol,
          "DensityOperator: trace " + std::to_string(trace) + " is not 1 within tol");
  const Eigen::VectorXd vals = detail::hermitian_eigenvalues(m_);
  require(vals.minCoeff() >= -tol,
          "DensityOperator: eigenvalue " + std::to_string(vals.minCoeff()) +
              " below -tol, matrix is not positive semidefinite");
}

DensityOperator DensityOperator::pure(const ComplexVector& psi, double tol) {
  require(psi.size() >= 1, "DensityOperator::pure: empty vector");
  require(std::abs(psi.norm() - 1.0) <= tol, "DensityOperator::pure: vector is not normalized");
  return DensityOperator((psi * psi.adjoint()).eval(), tol);
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  require(dim >= 1, "DensityOperator::maximally_mixed: dimension must be positive");
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

Isometry::Isometry(ComplexMatrix j, int d_b, int d_c, double tol) : d_b_(d_b), d_c_(d_c) {
  require(d_b >= 1 && d_c >= 1, "Isometry: output dimensions must be positive");
  require(j.cols() >= 1, "Isometry: input dimension must be positive");
  require(j.rows() == static_cast<Eigen::Index>(d_b) * d_c,
          "Isometry: matrix has " + std::to_string(j.rows()) + " rows, expected d_b*d_c = " +
              std::to_string(static_cast<long long>(d_b) * d_c));
  require(all_finite(j), "Isometry: entries must be finite");
  const ComplexMatrix gram = j.adjoint() * j;
  const double defect =
      (gram - ComplexMatrix::Identity(j.cols(), j.cols())).cwiseAbs().maxCoeff();
  require(defect <= tol,
          "Isometry: J^dag J deviates from identity by " + std::to_string(defect));
  j_ = std::move(j);
}

std::pair<DensityOperator, DensityOperator> channel_outputs(const Isometry& j,
                                                            const DensityOperator& rho) {
  require(rho.dim() == j.d_a(), "channel_outputs: input dimension " +
                                    std::to_string(rho.dim()) + " does not match d_a = " +
                                    std::to_string(j.d_a()));
  auto [rho_b, rho_c] = detail::raw_channel_outputs(j, rho.matrix());
  return {DensityOperator(std::move(rho_b)), DensityOperator(std::move(rho_c))};
}

std::pair<int, int> minimal_output_dims(const Isometry& j, double tol) {
  const ComplexMatrix jj = j.matrix() * j.matrix().adjoint();
  const ComplexMatrix b_of_id = partial_trace(jj, j.d_b(), j.d_c(), Keep::first);
  const ComplexMatrix c_of_id = partial_trace(jj, j.d_b(), j.d_c(), Keep::second);
  return {numerical_rank(b_of_id, tol), numerical_rank(c_of_id, tol)};
}

bool is_minimal(const Isometry& j, double tol) {
  const auto [rb, rc] = minimal_output_dims(j, tol);
  return rb == j.d_b() && rc == j.d_c();
}

Isometry build_pedagogic(double p) {
  require_unit_interval(p, "p");
  const int d_c = 3;
  ComplexMatrix j = ComplexMatrix::Zero(9, 3);
  j(0 * d_c + 0, 0) = std::sqrt(1.0 - p);  // |00>
  j(1 * d_c + 1, 0) = std::sqrt(p);        // |11>
  j(2 * d_c + 1, 1) = 1.0;                 // |21>
  j(1 * d_c + 2, 2) = 1.0;                 // |12>
  return Isometry(std::move(j), 3, 3);
}

Isometry build_qubit_family(double m, double p) {
  require_unit_interval(m, "m");
  require_unit_interval(p, "p");
  const int d_c = 2;
  ComplexMatrix j = ComplexMatrix::Zero(4, 2);
  j(0 * d_c + 0, 0) = std::sqrt(1.0 - m * p);  // |00>
  j(1 * d_c + 1, 0) = std::sqrt(m * p);        // |11>
  j(1 * d_c + 0, 1) = std::sqrt(1.0 - p);      // |10>
  j(0 * d_c + 1, 1) = std::sqrt(p);            // |01>
  return Isometry(std::move(j), 2, 2);
}

Isometry build_qutrit(double s) {
  require_unit_interval(s, "s");
  const int d_c = 2;
  ComplexMatrix j = ComplexMatrix::Zero(6, 3);
  j(0 * d_c + 0, 0) = std::sqrt(s);        // |00>
  j(1 * d_c + 1, 0) = std::sqrt(1.0 - s);  // |11>
  j(2 * d_c + 1, 1) = 1.0;                 // |21>
  j(2 * d_c + 0, 2) = 1.0;                 // |20>
  return Isometry(std::move(j), 3, 2);
}

Isometry build_generalized_erasure(const Isometry& j1, double lambda) {
  require_unit_interval(lambda, "lambda");
  const int d_a = j1.d_a();
  const int d_b1 = j1.d_b();
  const int d_c1 = j1.d_c();
  const int d_b = d_b1 + 1;
  const int d_c = d_c1 + d_a;
  const double keep = std::sqrt(1.0 - lambda);
  const double flag = std::sqrt(lambda);

  ComplexMatrix j = ComplexMatrix::Zero(static_cast<Eigen::Index>(d_b) * d_c, d_a);
  for (int col = 0; col < d_a; ++col) {
    // Noisy block: J1's output lands in (b < d_b1, c < d_c1).
    for (int ib = 0; ib < d_b1; ++ib) {
      for (int ic = 0; ic < d_c1; ++ic) {
        j(ib * d_c + ic, col) += keep * j1.matrix()(ib * d_c1 + ic, col);
      }
    }
    // Perfect block: erasure flag on b, verbatim input copy appended on c.
    j(d_b1 * d_c + d_c1 + col, col) += flag;
  }
  return Isometry(std::move(j), d_b, d_c);
}

Isometry tensor_pair(const Isometry& jx, const Isometry& jy) {
  const int d_ax = jx.d_a(), d_bx = jx.d_b(), d_cx = jx.d_c();
  const int d_ay = jy.d_a(), d_by = jy.d_b(), d_cy = jy.d_c();
  const int d_b = d_bx * d_by;
  const int d_c = d_cx * d_cy;
  ComplexMatrix j = ComplexMatrix::Zero(static_cast<Eigen::Index>(d_b) * d_c, d_ax * d_ay);
  for (int jx_col = 0; jx_col < d_ax; ++jx_col) {
    for (int jy_col = 0; jy_col < d_ay; ++jy_col) {
      const int col = jx_col * d_ay + jy_col;
      for (int ibx = 0; ibx < d_bx; ++ibx) {
        for (int icx = 0; icx < d_cx; ++icx) {
          const Complex zx = jx.matrix()(ibx * d_cx + icx, jx_col);
          if (zx == Complex(0.0, 0.0)) continue;
          for (int iby = 0; iby < d_by; ++iby) {
            for (int icy = 0; icy < d_cy; ++icy) {
              const Complex zy = jy.matrix()(iby * d_cy + icy, jy_col);
              if (zy == Complex(0.0, 0.0)) continue;
              const int ib = ibx * d_by + iby;
              const int ic = icx * d_cy + icy;
              j(static_cast<Eigen::Index>(ib) * d_c + ic, col) = zx * zy;
            }
          }
        }
      }
    }
  }
  return Isometry(std::move(j), d_b, d_c);
}

Isometry swap_outputs(const Isometry& j) {
  const int d_b = j.d_b(), d_c = j.d_c();
  ComplexMatrix out(j.matrix().rows(), j.matrix().cols());
  for (int ib = 0; ib < d_b; ++ib) {
    for (int ic = 0; ic < d_c; ++ic) {
      out.row(static_cast<Eigen::Index>(ic) * d_b + ib) =
          j.matrix().row(static_cast<Eigen::Index>(ib) * d_c + ic);
    }
  }
  return Isometry(std::move(out), d_c, d_b);
}

Isometry trim_to_minimal(const Isometry& j, double tol) {
  const ComplexMatrix jj = j.matrix() * j.matrix().adjoint();
  const ComplexMatrix b_of_id = partial_trace(jj, j.d_b(), j.d_c(), Keep::first);
  const ComplexMatrix c_of_id = partial_trace(jj, j.d_b(), j.d_c(), Keep::second);

  const auto support_basis = [tol](const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
    const Eigen::VectorXd vals = solver.eigenvalues();
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      if (vals(i) > tol) cols.push_back(i);
    }
    ComplexMatrix basis(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      basis.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(cols[k]);
    }
    return basis;
  };

  const ComplexMatrix ub = support_basis(b_of_id);  // d_b x r_b
  const ComplexMatrix uc = support_basis(c_of_id);  // d_c x r_c
  const ComplexMatrix compressed = kron(ub.adjoint(), uc.adjoint()) * j.matrix();
  return Isometry(compressed, static_cast<int>(ub.cols()), static_cast<int>(uc.cols()));
}

namespace detail {

std::pair<ComplexMatrix, ComplexMatrix> raw_channel_outputs(const Isometry& j,
                                                            const ComplexMatrix& rho) {
  const ComplexMatrix joint = j.matrix() * rho * j.matrix().adjoint();
  ComplexMatrix rho_b = partial_trace(joint, j.d_b(), j.d_c(), Keep::first);
  ComplexMatrix rho_c = partial_trace(joint, j.d_b(), j.d_c(), Keep::second);
  rho_b = 0.5 * (rho_b + rho_b.adjoint()).eval();
  rho_c = 0.5 * (rho_c + rho_c.adjoint()).eval();
  return {std::move(rho_b), std::move(rho_c)};
}

}  // namespace detail

}  // namespace qci
