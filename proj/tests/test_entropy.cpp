#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qci/entropy.hpp"
#include "qci/rng.hpp"

using namespace qci;

namespace {

DensityOperator random_density(SplitMix64& rng, int d) {
  ComplexMatrix g = random_complex_gaussian(rng, d, d);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(std::move(rho));
}

}  // namespace

TEST_CASE("entropy of simple states") {
  CHECK(von_neumann_entropy(DensityOperator::maximally_mixed(2)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(von_neumann_entropy(DensityOperator::pure(basis_ket(4, 2))) ==
        doctest::Approx(0.0).epsilon(1e-14));

  // Scalar formula oracle.
  ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  const double expected = -0.7 * std::log2(0.7) - 0.3 * std::log2(0.3);
  CHECK(von_neumann_entropy(DensityOperator(rho)) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("entropy rejects genuinely negative spectra") {
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  CHECK_THROWS_AS(detail::entropy_of_hermitian(bad), std::domain_error);
  // Tiny negatives inside the floor clamp to zero instead.
  ComplexMatrix ok = ComplexMatrix::Zero(2, 2);
  ok(0, 0) = 1.0;
  ok(1, 1) = -1e-13;
  CHECK(detail::entropy_of_hermitian(ok) == doctest::Approx(0.0));
}

TEST_CASE("entropy additivity and concavity") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityOperator a = random_density(rng, 2);
    const DensityOperator b = random_density(rng, 3);
    const DensityOperator ab(kron(a.matrix(), b.matrix()));
    CHECK(von_neumann_entropy(ab) ==
          doctest::Approx(von_neumann_entropy(a) + von_neumann_entropy(b)).epsilon(1e-9));

    const DensityOperator c = random_density(rng, 3);
    const DensityOperator mix((0.5 * b.matrix() + 0.5 * c.matrix()).eval());
    CHECK(von_neumann_entropy(mix) >=
          0.5 * von_neumann_entropy(b) + 0.5 * von_neumann_entropy(c) - 1e-12);
  }
}

TEST_CASE("entropy bias vanishes on pure inputs for every constructor") {
  SplitMix64 rng(42);
  for (int step = 0; step <= 20; ++step) {
    const double t = 0.05 * step;
    const Isometry channels[] = {
        build_pedagogic(t),
        build_qubit_family(t, 1.0 - t),
        build_qutrit(t),
        build_generalized_erasure(build_qubit_family(0.4, 0.3), t),
    };
    for (const Isometry& j : channels) {
      const ComplexVector psi = random_ket(rng, j.d_a());
      const BiasValue bias = entropy_bias(j, DensityOperator::pure(psi));
      CHECK(std::abs(bias.delta) < 1e-9);
    }
  }
}

TEST_CASE("entropy bias orientation on the generalized erasure pair") {
  // p = 0 turns the pair into (erasure_lambda, erasure_{1-lambda}); at the
  // maximally mixed input the bias of the direct side is 1-2*lambda and the
  // complement sees the negative of that.
  const double lambda = 0.75;
  const Isometry j = build_generalized_erasure(build_qubit_family(0.5, 0.0), lambda);
  const DensityOperator mixed = DensityOperator::maximally_mixed(2);
  const BiasValue direct = entropy_bias(j, mixed);
  CHECK(direct.delta == doctest::Approx(1.0 - 2.0 * lambda).epsilon(1e-12));
  const BiasValue comp = entropy_bias(swap_outputs(j), mixed);
  CHECK(comp.delta == doctest::Approx(2.0 * lambda - 1.0).epsilon(1e-12));
}

TEST_CASE("pedagogic bias turns positive for small mixing") {
  const Isometry j = build_pedagogic(0.3);
  for (const double eps : {1e-3, 1e-2}) {
    ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
    rho(0, 0) = 1.0 - eps;
    rho(1, 1) = eps;
    CHECK(entropy_bias(j, DensityOperator(rho)).delta > 0.0);
  }
}

TEST_CASE("output_spectra_pure") {
  ComplexMatrix ident = ComplexMatrix::Zero(2, 2);
  ident(0, 0) = 1.0;
  ident(1, 1) = 1.0;
  const Isometry trivial(ident, 2, 1);
  SplitMix64 ket_rng(43);
  const auto spectrum = output_spectra_pure(trivial, random_ket(ket_rng, 2));
  REQUIRE(spectrum.size() == 1);
  CHECK(spectrum[0] == doctest::Approx(1.0).epsilon(1e-12));

  const auto pedagogic = output_spectra_pure(build_pedagogic(0.3), basis_ket(3, 0));
  REQUIRE(pedagogic.size() == 2);
  CHECK(pedagogic[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(pedagogic[1] == doctest::Approx(0.3).epsilon(1e-12));

  // Cross-check against the eigensolver on both outputs.
  SplitMix64 rng(44);
  const Isometry j = build_qutrit(0.4);
  const ComplexVector psi = random_ket(rng, 3);
  const auto schmidt = output_spectra_pure(j, psi);
  const auto [rho_b, rho_c] = channel_outputs(j, DensityOperator::pure(psi));
  const Eigen::VectorXd vb = detail::hermitian_eigenvalues(rho_b.matrix());
  const Eigen::VectorXd vc = detail::hermitian_eigenvalues(rho_c.matrix());
  double total = 0.0;
  for (std::size_t i = 0; i < schmidt.size(); ++i) {
    CHECK(std::abs(schmidt[i] - vb(vb.size() - 1 - static_cast<Eigen::Index>(i))) < 1e-10);
    CHECK(std::abs(schmidt[i] - vc(vc.size() - 1 - static_cast<Eigen::Index>(i))) < 1e-10);
    total += schmidt[i];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  ComplexVector unnormalized = 2.0 * basis_ket(3, 0);
  CHECK_THROWS_AS(output_spectra_pure(j, unnormalized), std::invalid_argument);
}
