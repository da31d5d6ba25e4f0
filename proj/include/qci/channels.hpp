#pragma once

#include <utility>

#include "qci/linalg.hpp"

namespace qci {

/// Hermitian, positive semidefinite, unit-trace operator with explicit
/// dimension. The stored matrix is the symmetrized input.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m, double tol = kDefaultTol);

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  static DensityOperator pure(const ComplexVector& psi, double tol = kDefaultTol);
  static DensityOperator maximally_mixed(int dim);

 private:
  ComplexMatrix m_;
};

/// An isometry J : H_a -> H_b (x) H_c defining a complementary channel pair
/// (B, C) = (Tr_c J.J^dag, Tr_b J.J^dag). The composite output index is
/// b-major: (i_b, i_c) -> i_b*d_c + i_c.
class Isometry {
 public:
  Isometry(ComplexMatrix j, int d_b, int d_c, double tol = kDefaultTol);

  int d_a() const { return static_cast<int>(j_.cols()); }
  int d_b() const { return d_b_; }
  int d_c() const { return d_c_; }
  const ComplexMatrix& matrix() const { return j_; }

 private:
  ComplexMatrix j_;
  int d_b_;
  int d_c_;
};

/// (rho_b, rho_c) = (Tr_c(J rho J^dag), Tr_b(J rho J^dag)).
std::pair<DensityOperator, DensityOperator> channel_outputs(const Isometry& j,
                                                            const DensityOperator& rho);

/// Ranks of B(I_a) and C(I_a): the smallest output dimensions that can carry
/// the pair (equivalently the Choi ranks of C and B).
std::pair<int, int> minimal_output_dims(const Isometry& j, double tol = kDefaultTol);

bool is_minimal(const Isometry& j, double tol = kDefaultTol);

/// Qutrit-to-qutrit-pair teaching example:
///   J|0> = sqrt(1-p)|00> + sqrt(p)|11>,  J|1> = |21>,  J|2> = |12>.
/// Interchanging |1> and |2> on the input interchanges the two outputs.
Isometry build_pedagogic(double p);

/// Qubit pair family covering every qubit channel whose complement has zero
/// quantum capacity (up to local unitaries):
///   J|0> = sqrt(1-m*p)|00> + sqrt(m*p)|11>,
///   J|1> = sqrt(1-p)|10>  + sqrt(p)|01>.
/// m = 0 gives the amplitude damping structure, (m=1, p=0) a trace channel
/// on the c side.
Isometry build_qubit_family(double m, double p);

/// Qutrit channel with a two-dimensional complementary output:
///   J|0> = sqrt(s)|00> + sqrt(1-s)|11>,  J|1> = |21>,  J|2> = |20>.
Isometry build_qutrit(double s);

/// Direct-sum mixture of a noisy pair (B1, C1) with the perfect (trace,
/// identity) pair:
///   B(A) = (1-lambda) B1(A)  (+)  lambda Tr(A)[e],
///   C(A) = (1-lambda) C1(A)  (+)  lambda A.
/// The erasure flag |e> is appended as the last basis vector of H_b and the
/// input copy follows the C1 block in H_c, so d_b = d_b1 + 1 and
/// d_c = d_c1 + d_a.
Isometry build_generalized_erasure(const Isometry& j1, double lambda);

/// Isometry of the parallel pair (Bx (x) By, Cx (x) Cy), with outputs
/// reordered from (bx cx by cy) to (bx by)(cx cy).
Isometry tensor_pair(const Isometry& jx, const Isometry& jy);

/// Same pair with the roles of the two outputs exchanged: the direct channel
/// of the result is the complement of the input's direct channel.
Isometry swap_outputs(const Isometry& j);

/// Compress the declared output spaces to the supports of B(I_a) and C(I_a).
Isometry trim_to_minimal(const Isometry& j, double tol = kDefaultTol);

namespace detail {
/// J rho J^dag and its two partial traces without density-operator
/// validation; used in optimizer inner loops.
std::pair<ComplexMatrix, ComplexMatrix> raw_channel_outputs(const Isometry& j,
                                                            const ComplexMatrix& rho);
}  // namespace detail

}  // namespace qci
