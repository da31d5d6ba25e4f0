#include "qci/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qci/rng.hpp"

namespace qci {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols();
  const Eigen::Index rb = b.rows(), cb = b.cols();
  ComplexMatrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows() == a.cols() && b.rows() == b.cols(),
          "direct_sum: both blocks must be square");
  const Eigen::Index da = a.rows(), db = b.rows();
  ComplexMatrix out = ComplexMatrix::Zero(da + db, da + db);
  out.topLeftCorner(da, da) = a;
  out.bottomRightCorner(db, db) = b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int d1, int d2, Keep keep) {
  require(d1 >= 1 && d2 >= 1, "partial_trace: dimensions must be positive");
  require(m.rows() == m.cols(), "partial_trace: matrix must be square");
  require(m.rows() == static_cast<Eigen::Index>(d1) * d2,
          "partial_trace: matrix dimension " + std::to_string(m.rows()) +
              " does not equal d1*d2 = " + std::to_string(d1 * d2));
  if (keep == Keep::first) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i) {
      for (int j = 0; j < d1; ++j) {
        Complex sum = 0.0;
        for (int k = 0; k < d2; ++k) sum += m(i * d2 + k, j * d2 + k);
        out(i, j) = sum;
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (int i = 0; i < d2; ++i) {
    for (int j = 0; j < d2; ++j) {
      Complex sum = 0.0;
      for (int k = 0; k < d1; ++k) sum += m(k * d2 + i, k * d2 + j);
      out(i, j) = sum;
    }
  }
  return out;
}

HermitianSpectrum hermitian_spectrum(const ComplexMatrix& m, double tol) {
  require(m.rows() == m.cols(), "hermitian_spectrum: matrix must be square");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  const Eigen::VectorXd vals = solver.eigenvalues();  // ascending
  const ComplexMatrix& vecs = solver.eigenvectors();
  const int d = static_cast<int>(m.rows());

  HermitianSpectrum out;
  out.eigenvalues.resize(d);
  for (int i = 0; i < d; ++i) out.eigenvalues[i] = vals(d - 1 - i);

  // Cluster adjacent (descending) eigenvalues whose gap is at most tol.
  int start = 0;
  while (start < d) {
    int end = start + 1;
    while (end < d && out.eigenvalues[end - 1] - out.eigenvalues[end] <= tol) ++end;
    ComplexMatrix proj = ComplexMatrix::Zero(d, d);
    for (int i = start; i < end; ++i) {
      const auto v = vecs.col(d - 1 - i);
      proj += v * v.adjoint();
    }
    out.projectors.push_back(std::move(proj));
    out.cluster_sizes.push_back(end - start);
    start = end;
  }
  return out;
}

int numerical_rank(const ComplexMatrix& m, double tol) {
  require(m.rows() == m.cols(), "numerical_rank: matrix must be square");
  const Eigen::VectorXd vals = detail::hermitian_eigenvalues(m);
  int rank = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol) {
      throw std::domain_error("numerical_rank: eigenvalue " + std::to_string(vals(i)) +
                              " below -tol, input is not positive semidefinite");
    }
    if (vals(i) > tol) ++rank;
  }
  return rank;
}

ComplexVector basis_ket(int dim, int index) {
  require(dim >= 1 && index >= 0 && index < dim, "basis_ket: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

double hermiticity_gap(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace detail {

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace detail

ComplexMatrix random_complex_gaussian(SplitMix64& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
  }
  return m;
}

ComplexVector random_ket(SplitMix64& rng, int dim) {
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  return v / v.norm();
}

}  // namespace qci
