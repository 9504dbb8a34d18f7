#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include "qsimul/observable.hpp"

#include "testing.hpp"

using namespace qsimul;
using namespace qsimul::testing;

TEST_CASE("spectralize groups a degenerate diagonal") {
  CMatrix m = CMatrix::Zero(3, 3);
  m.diagonal() << 1, 1, -1;
  const Observable a = spectralize(m);
  REQUIRE(a.spectrum().size() == 2);
  CHECK(close(a.spectrum()[0].value, -1.0));
  CHECK(a.spectrum()[0].projection.rank() == 1);
  CHECK(close(a.spectrum()[1].value, 1.0));
  CHECK(a.spectrum()[1].projection.rank() == 2);
}

TEST_CASE("spectralize of pauli_x gives the plus/minus projections") {
  const Observable a = pauli_x();
  REQUIRE(a.spectrum().size() == 2);
  const CMatrix minus = a.spectrum()[0].projection.matrix();
  const CMatrix plus = a.spectrum()[1].projection.matrix();
  CHECK(matrices_close(plus, mat2(0.5, 0.5, 0.5, 0.5)));
  CHECK(matrices_close(minus, mat2(0.5, -0.5, -0.5, 0.5)));
}

TEST_CASE("spectralize clusters nearly equal eigenvalues") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 1) = 1e-12;
  const Observable a = spectralize(m, 1e-9);
  REQUIRE(a.spectrum().size() == 1);
  CHECK(close(a.spectrum()[0].value, 5e-13, 1e-14));
  CHECK(a.spectrum()[0].projection.rank() == 2);
}

TEST_CASE("spectral invariants hold across random matrices") {
  Rng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index dim = 2 + trial % 15;
    const Observable a = random_observable(rng, dim);
    CMatrix completeness = CMatrix::Zero(dim, dim);
    CMatrix rebuilt = CMatrix::Zero(dim, dim);
    for (const auto& c : a.spectrum()) {
      completeness += c.projection.matrix();
      rebuilt += c.value * c.projection.matrix();
    }
    CHECK(max_abs(completeness - CMatrix::Identity(dim, dim)) <= 1e-9);
    CHECK(max_abs(rebuilt - a.matrix()) <= 1e-8);
    for (std::size_t i = 0; i < a.spectrum().size(); ++i) {
      for (std::size_t j = i + 1; j < a.spectrum().size(); ++j) {
        CHECK(max_abs(a.spectrum()[i].projection.matrix() *
                      a.spectrum()[j].projection.matrix()) <= 1e-8);
      }
    }
  }
}

TEST_CASE("born_distribution on eigenstates and superpositions") {
  const Observable z = pauli_z();
  const OutcomeDistribution d0 = born_distribution(z, ket0());
  CHECK(close(d0.probability(1.0), 1.0));
  CHECK(close(d0.probability(-1.0), 0.0));

  const OutcomeDistribution dplus = born_distribution(z, ket_plus());
  CHECK(close(dplus.probability(1.0), 0.5));
  CHECK(close(dplus.probability(-1.0), 0.5));

  const OutcomeDistribution did =
      born_distribution(identity_observable(2), ket_plus());
  CHECK(close(did.probability(1.0), 1.0));
}

TEST_CASE("born_distribution normalizes on random inputs") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = 2 + trial % 7;
    const Observable a = random_observable(rng, dim);
    const OutcomeDistribution d = born_distribution(a, random_state(rng, dim));
    CHECK(close(d.sum(), 1.0));
    for (const auto& [x, p] : d.entries()) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("std_dev on eigenstates, superpositions and the identity") {
  CHECK(close(std_dev(pauli_z(), ket0()), 0.0));
  CHECK(close(std_dev(pauli_z(), ket_plus()), 1.0));
  CHECK(close(std_dev(identity_observable(2), ket_plus()), 0.0));
}

TEST_CASE("std_dev vanishes exactly on eigenvectors") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index dim = 2 + trial % 5;
    const Observable a = random_observable(rng, dim);
    const bool use_eigenvector = trial % 2 == 0;
    const PureState psi =
        use_eigenvector
            ? PureState::normalized(
                  a.spectrum()[rng() % a.spectrum().size()]
                      .projection.range_basis()
                      .col(0))
            : random_state(rng, dim);
    const double sigma = std_dev(a, psi);
    const Complex mean = expectation(a.matrix(), psi);
    const double eigen_residual =
        (a.matrix() * psi.vector() - mean * psi.vector()).norm();
    if (sigma <= 1e-8) {
      CHECK(eigen_residual <= 1e-7);
    } else {
      CHECK(eigen_residual > 1e-7);
    }
  }
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(born_distribution(pauli_z(), PureState::basis_state(3, 0)),
                  DimensionMismatch);
  CHECK_THROWS_AS(std_dev(pauli_z(), PureState::basis_state(3, 0)),
                  DimensionMismatch);
}

TEST_CASE("pure states must be normalized") {
  CHECK_THROWS_AS(PureState(vec2(1.0, 1.0)), InvalidValue);
  CHECK(close(PureState::normalized(vec2(3.0, 4.0)).vector().norm(), 1.0));
  CHECK_THROWS_AS(PureState::normalized(vec2(0.0, 0.0)), InvalidValue);
}

TEST_CASE("eigenstate_value detects eigenvectors") {
  CHECK(eigenstate_value(pauli_z(), ket0()).has_value());
  CHECK(close(*eigenstate_value(pauli_z(), ket0()), 1.0));
  CHECK(!eigenstate_value(pauli_z(), ket_plus()).has_value());
}
