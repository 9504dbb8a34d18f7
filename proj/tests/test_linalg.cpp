#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include "qsimul/linalg.hpp"

#include "testing.hpp"

using namespace qsimul;
using namespace qsimul::testing;

TEST_CASE("eigh handles the identity") {
  const auto [vals, vecs] = eigh(CMatrix::Identity(2, 2));
  CHECK(close(vals(0), 1.0));
  CHECK(close(vals(1), 1.0));
  CHECK(matrices_close(vecs * vecs.adjoint(), CMatrix::Identity(2, 2)));
}

TEST_CASE("eigh of pauli_z is already diagonal") {
  const auto [vals, vecs] = eigh(mat2(1, 0, 0, -1));
  CHECK(close(vals(0), -1.0));
  CHECK(close(vals(1), 1.0));
}

TEST_CASE("eigh of pauli_x matches the hand computation") {
  const CMatrix sx = mat2(0, 1, 1, 0);
  const auto [vals, vecs] = eigh(sx);
  CHECK(close(vals(0), -1.0));
  CHECK(close(vals(1), 1.0));
  // Eigenvectors are (1, -1)/sqrt(2) and (1, 1)/sqrt(2) up to phase.
  for (Eigen::Index j = 0; j < 2; ++j) {
    CHECK(close(std::abs(vecs(0, j)), 1.0 / std::sqrt(2.0)));
    CHECK(close(std::abs(vecs(1, j)), 1.0 / std::sqrt(2.0)));
  }
  CHECK(matrices_close(sx * vecs.col(0), -1.0 * vecs.col(0)));
}

TEST_CASE("eigh rejects non-Hermitian input") {
  CHECK_THROWS_AS(eigh(mat2(0, 1, 0, 0)), NotHermitian);
  CHECK_THROWS_AS(eigh(CMatrix::Zero(2, 3)), NotHermitian);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index dim = 2 + trial % 15;
    const CMatrix m = random_hermitian(rng, dim);
    const auto [vals, vecs] = eigh(m);
    const CMatrix rebuilt =
        vecs * vals.cast<Complex>().asDiagonal() * vecs.adjoint();
    CHECK(max_abs(rebuilt - m) <= 1e-10 * std::max(max_abs(m), 1.0));
    CHECK(matrices_close(vecs.adjoint() * vecs, CMatrix::Identity(dim, dim),
                         1e-10));
    for (Eigen::Index i = 0; i + 1 < dim; ++i) CHECK(vals(i) <= vals(i + 1));
  }
}

TEST_CASE("projection_meet absorbs the identity and annihilates orthogonal "
          "ranges") {
  Rng rng(5);
  const CMatrix basis = random_unitary(rng, 4).leftCols(2);
  const Projection p = Projection::from_basis(basis);
  const Projection id = Projection::identity(4);

  const Projection meet_ip = projection_meet(id, p);
  CHECK(matrices_close(meet_ip.matrix(), p.matrix(), 1e-9));
  CHECK(meet_ip.rank() == 2);

  const Projection e0 = Projection::from_matrix(mat2(1, 0, 0, 0));
  const Projection e1 = Projection::from_matrix(mat2(0, 0, 0, 1));
  CHECK(projection_meet(e0, e1).rank() == 0);
  CHECK(max_abs(projection_meet(e0, e1).matrix()) <= 1e-12);
}

TEST_CASE("projection_meet of distinct lines in C^2 is zero") {
  const Projection plus =
      Projection::from_basis(vec2(1, 1) / std::sqrt(2.0));
  const Projection zero_axis = Projection::from_basis(vec2(1, 0));
  CHECK(projection_meet(plus, zero_axis).rank() == 0);
}

TEST_CASE("projection_meet is idempotent, symmetric and range-monotone") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index dim = 3 + trial % 4;
    const int rank_p = 1 + static_cast<int>(rng() % (dim - 1));
    const int rank_q = 1 + static_cast<int>(rng() % (dim - 1));
    const Projection p =
        Projection::from_basis(random_unitary(rng, dim).leftCols(rank_p));
    const Projection q =
        Projection::from_basis(random_unitary(rng, dim).leftCols(rank_q));

    const Projection pp = projection_meet(p, p);
    CHECK(matrices_close(pp.matrix(), p.matrix(), 1e-9));

    const Projection pq = projection_meet(p, q);
    const Projection qp = projection_meet(q, p);
    CHECK(matrices_close(pq.matrix(), qp.matrix(), 1e-9));
    // range(meet) lies inside range(p).
    CHECK(matrices_close(p.matrix() * pq.matrix(), pq.matrix(), 1e-9));
  }
}

TEST_CASE("projection_meet agrees with the product for commuting pairs") {
  // For commuting projections the alternating product (PQ)^n equals PQ
  // exactly, so the meet must match the plain product.
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index dim = 4;
    const CMatrix basis = random_unitary(rng, dim);
    CMatrix p = CMatrix::Zero(dim, dim);
    CMatrix q = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const CMatrix line = basis.col(i) * basis.col(i).adjoint();
      if (rng() % 2) p += line;
      if (rng() % 2) q += line;
    }
    const Projection pp = Projection::from_matrix(p);
    const Projection qq = Projection::from_matrix(q);
    CHECK(max_abs(projection_meet(pp, qq).matrix() - p * q) <= 1e-8);
  }
}

TEST_CASE("tensor follows the system-major convention") {
  const CMatrix id2 = CMatrix::Identity(2, 2);
  CHECK(matrices_close(tensor(id2, id2), CMatrix::Identity(4, 4)));

  const CMatrix z_ext = tensor(mat2(1, 0, 0, -1), id2);
  CMatrix expected = CMatrix::Zero(4, 4);
  expected.diagonal() << 1, 1, -1, -1;
  CHECK(matrices_close(z_ext, expected));

  const CMatrix xz = tensor(mat2(0, 1, 1, 0), mat2(1, 0, 0, -1));
  CHECK(matrices_close(xz.block(0, 2, 2, 2), mat2(1, 0, 0, -1)));
  CHECK(matrices_close(xz.block(2, 0, 2, 2), mat2(1, 0, 0, -1)));
  CHECK(max_abs(xz.block(0, 0, 2, 2)) == 0.0);
}

TEST_CASE("partial_trace_probe satisfies the product rule") {
  Rng rng(29);
  const CMatrix a = random_gaussian(rng, 3, 3);
  const CMatrix b = random_gaussian(rng, 2, 2);
  const CMatrix traced = partial_trace_probe(tensor(a, b), 3, 2);
  CHECK(matrices_close(traced, a * b.trace(), 1e-10));
  CHECK(close(traced.trace(), tensor(a, b).trace(), 1e-10));
}

TEST_CASE("partial_trace_probe of the identity and the swap") {
  CHECK(matrices_close(partial_trace_probe(CMatrix::Identity(4, 4), 2, 2),
                       2.0 * CMatrix::Identity(2, 2)));

  CMatrix swap = CMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index k = 0; k < 2; ++k) swap(i * 2 + k, k * 2 + i) = 1.0;
  CHECK(matrices_close(partial_trace_probe(swap, 2, 2),
                       CMatrix::Identity(2, 2)));
}

TEST_CASE("partial_trace_probe rejects mismatched dimensions") {
  CHECK_THROWS_AS(partial_trace_probe(CMatrix::Identity(5, 5), 2, 2),
                  DimensionMismatch);
}

TEST_CASE("orthonormalize drops dependent vectors and keeps independent ones") {
  const Subspace collinear = orthonormalize({vec2(1, 0), vec2(2, 0)});
  CHECK(collinear.dim() == 1);
  CHECK(close(std::abs(collinear.basis[0](0)), 1.0));

  CHECK(orthonormalize({}).dim() == 0);

  const Subspace full =
      orthonormalize({vec2(1, 1) / std::sqrt(2.0), vec2(1, 0)});
  CHECK(full.dim() == 2);
  CHECK(close(std::abs(full.basis[0].dot(full.basis[1])), 0.0, 1e-12));
}

TEST_CASE("subspace projection is idempotent") {
  Rng rng(31);
  const Subspace s = orthonormalize(
      {random_gaussian(rng, 5, 1).col(0), random_gaussian(rng, 5, 1).col(0)});
  const CVector v = random_gaussian(rng, 5, 1).col(0);
  const CVector once = s.project(v);
  CHECK((s.project(once) - once).norm() <= 1e-10);
}
