#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qci/linalg.hpp"
#include "qci/rng.hpp"

using namespace qci;

namespace {

ComplexMatrix identity(int d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix diag(std::initializer_list<double> values) {
  ComplexMatrix m = ComplexMatrix::Zero(values.size(), values.size());
  int i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

ComplexMatrix random_hermitian(SplitMix64& rng, int d) {
  const ComplexMatrix g = random_complex_gaussian(rng, d, d);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_psd(SplitMix64& rng, int d) {
  const ComplexMatrix g = random_complex_gaussian(rng, d, d);
  return g * g.adjoint();
}

// Independent summation oracle for traces.
Complex trace_by_summation(const ComplexMatrix& m) {
  Complex t = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

TEST_CASE("kron identities and dimensions") {
  CHECK((kron(identity(2), identity(2)) - identity(4)).norm() == 0.0);
  CHECK((kron(diag({1, 0}), diag({1, 0})) - diag({1, 0, 0, 0})).norm() == 0.0);

  SplitMix64 rng(11);
  const ComplexMatrix a = random_complex_gaussian(rng, 2, 2);
  const ComplexMatrix b = random_complex_gaussian(rng, 2, 2);
  const Complex lhs = trace_by_summation(kron(a, b));
  const Complex rhs = trace_by_summation(a) * trace_by_summation(b);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("kron mixed-product property") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_complex_gaussian(rng, 2, 2);
    const ComplexMatrix b = random_complex_gaussian(rng, 2, 2);
    const ComplexMatrix c = random_complex_gaussian(rng, 2, 2);
    const ComplexMatrix d = random_complex_gaussian(rng, 2, 2);
    const ComplexMatrix lhs = kron(a, b) * kron(c, d);
    const ComplexMatrix rhs = kron((a * c).eval(), (b * d).eval());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("direct_sum blocks and trace") {
  CHECK((direct_sum(diag({1}), diag({0})) - diag({1, 0})).norm() == 0.0);
  CHECK((direct_sum(identity(2), identity(2)) - identity(4)).norm() == 0.0);

  SplitMix64 rng(13);
  const ComplexMatrix a = random_complex_gaussian(rng, 3, 3);
  const ComplexMatrix b = random_complex_gaussian(rng, 2, 2);
  const Complex lhs = trace_by_summation(direct_sum(a, b));
  CHECK(std::abs(lhs - (trace_by_summation(a) + trace_by_summation(b))) < 1e-12);

  CHECK_THROWS_AS(direct_sum(random_complex_gaussian(rng, 2, 3), a), std::invalid_argument);
}

TEST_CASE("partial_trace on known states") {
  // Bell dyad -> maximally mixed marginal.
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = 1.0 / std::sqrt(2.0);
  bell(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix dyad = bell * bell.adjoint();
  CHECK((partial_trace(dyad, 2, 2, Keep::first) - 0.5 * identity(2)).cwiseAbs().maxCoeff() <
        1e-14);

  CHECK((partial_trace(identity(4), 2, 2, Keep::first) - 2.0 * identity(2)).norm() == 0.0);

  SplitMix64 rng(14);
  const ComplexMatrix a = random_complex_gaussian(rng, 3, 3);
  const ComplexMatrix b = random_complex_gaussian(rng, 2, 2);
  const ComplexMatrix lhs = partial_trace(kron(a, b), 3, 2, Keep::first);
  CHECK((lhs - a * trace_by_summation(b)).cwiseAbs().maxCoeff() < 1e-12);
  const ComplexMatrix rhs = partial_trace(kron(a, b), 3, 2, Keep::second);
  CHECK((rhs - b * trace_by_summation(a)).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(partial_trace(identity(6), 2, 2, Keep::first), std::invalid_argument);
}

TEST_CASE("partial_trace preserves trace and positivity") {
  SplitMix64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_psd(rng, 6);
    for (const Keep keep : {Keep::first, Keep::second}) {
      const ComplexMatrix reduced = partial_trace(m, 2, 3, keep);
      CHECK(std::abs((reduced.trace() - m.trace()).real()) < 1e-12);
      CHECK(detail::hermitian_eigenvalues(reduced).minCoeff() > -1e-12);
    }
  }
}

TEST_CASE("hermitian_spectrum on fixed matrices") {
  const HermitianSpectrum diag_spec = hermitian_spectrum(diag({0.7, 0.3}));
  CHECK(diag_spec.eigenvalues[0] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(diag_spec.eigenvalues[1] == doctest::Approx(0.3).epsilon(1e-14));

  ComplexMatrix pauli_x = ComplexMatrix::Zero(2, 2);
  pauli_x(0, 1) = 1.0;
  pauli_x(1, 0) = 1.0;
  const HermitianSpectrum x_spec = hermitian_spectrum(pauli_x);
  CHECK(x_spec.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(x_spec.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_spectrum reconstruction and projector algebra") {
  SplitMix64 rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = random_hermitian(rng, 4);
    const HermitianSpectrum spec = hermitian_spectrum(m);

    ComplexMatrix rebuilt = ComplexMatrix::Zero(4, 4);
    int eig_idx = 0;
    for (std::size_t k = 0; k < spec.projectors.size(); ++k) {
      rebuilt += spec.eigenvalues[eig_idx] * spec.projectors[k];
      eig_idx += spec.cluster_sizes[k];
    }
    CHECK((rebuilt - m).cwiseAbs().maxCoeff() < 1e-10);

    ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
    for (std::size_t k = 0; k < spec.projectors.size(); ++k) {
      const ComplexMatrix& p = spec.projectors[k];
      CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
      for (std::size_t l = 0; l < k; ++l) {
        CHECK((p * spec.projectors[l]).cwiseAbs().maxCoeff() < 1e-10);
      }
      sum += p;
    }
    CHECK((sum - identity(4)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("hermitian_spectrum clusters degenerate eigenvalues") {
  const HermitianSpectrum spec = hermitian_spectrum(diag({0.5, 0.5, 0.0}));
  REQUIRE(spec.projectors.size() == 2);
  CHECK(spec.cluster_sizes[0] == 2);
  CHECK(spec.cluster_sizes[1] == 1);
}

TEST_CASE("numerical_rank") {
  CHECK(numerical_rank(diag({0.5, 0.5, 0.0})) == 2);
  CHECK(numerical_rank(identity(3)) == 3);
  CHECK_THROWS_AS(numerical_rank(diag({1.0, -0.5})), std::domain_error);
}
