#include "qsimul/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qsimul {

bool is_hermitian(const CMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tolerance;
}

EighResult eigh(const CMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) {
    throw NotHermitian("eigh: matrix is not square");
  }
  if (!is_hermitian(m, tolerance)) {
    throw NotHermitian("eigh: matrix is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error("eigh: eigensolver failed to converge");
  }
  return EighResult{solver.eigenvalues(), solver.eigenvectors()};
}

Projection Projection::from_matrix(CMatrix m, double tolerance) {
  if (m.rows() != m.cols()) {
    throw InvalidValue("Projection: matrix is not square");
  }
  if (max_abs(m - m.adjoint()) > tolerance) {
    throw InvalidValue("Projection: matrix is not Hermitian");
  }
  if (max_abs(m * m - m) > tolerance) {
    throw InvalidValue("Projection: matrix is not idempotent");
  }
  const double tr = m.trace().real();
  const int rank = static_cast<int>(std::lround(tr));
  if (std::abs(tr - rank) > 0.01) {
    throw InvalidValue("Projection: trace is not close to an integer");
  }
  return Projection(std::move(m), rank);
}

Projection Projection::from_basis(const CMatrix& orthonormal_columns) {
  CMatrix p = orthonormal_columns * orthonormal_columns.adjoint();
  p = (p + p.adjoint().eval()) / 2.0;
  return Projection(std::move(p),
                    static_cast<int>(orthonormal_columns.cols()));
}

Projection Projection::zero(Eigen::Index dim) {
  return Projection(CMatrix::Zero(dim, dim), 0);
}

Projection Projection::identity(Eigen::Index dim) {
  return Projection(CMatrix::Identity(dim, dim), static_cast<int>(dim));
}

CMatrix Projection::range_basis() const {
  if (rank_ == 0) return CMatrix(dim(), 0);
  // Eigenvectors with eigenvalue near 1 span the range.
  const auto [vals, vecs] = eigh(matrix_, tol::projection * 10);
  return vecs.rightCols(rank_);
}

Projection projection_meet(const Projection& e, const Projection& f) {
  if (e.dim() != f.dim()) {
    throw DimensionMismatch("projection_meet: dimensions differ");
  }
  const Eigen::Index d = e.dim();
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix g = (id - e.matrix()) + (id - f.matrix());
  const auto [vals, vecs] = eigh(g);
  Eigen::Index k = 0;
  while (k < d && vals(k) <= tol::meet) ++k;
  if (k == 0) return Projection::zero(d);
  return Projection::from_basis(vecs.leftCols(k));
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix partial_trace_probe(const CMatrix& m, Eigen::Index dim_system,
                            Eigen::Index dim_probe) {
  if (m.rows() != m.cols() || m.rows() != dim_system * dim_probe) {
    throw DimensionMismatch("partial_trace_probe: size is not dimH * dimK");
  }
  CMatrix out = CMatrix::Zero(dim_system, dim_system);
  for (Eigen::Index i = 0; i < dim_system; ++i)
    for (Eigen::Index j = 0; j < dim_system; ++j)
      for (Eigen::Index k = 0; k < dim_probe; ++k)
        out(i, j) += m(i * dim_probe + k, j * dim_probe + k);
  return out;
}

CVector Subspace::project(const CVector& v) const {
  CVector out = CVector::Zero(v.size());
  for (const CVector& b : basis) out += b.dot(v) * b;
  return out;
}

CMatrix Subspace::basis_matrix(Eigen::Index ambient) const {
  CMatrix out(ambient, dim());
  for (Eigen::Index j = 0; j < dim(); ++j) out.col(j) = basis[j];
  return out;
}

Subspace orthonormalize(const std::vector<CVector>& vectors, double rank_tol) {
  Subspace out;
  for (const CVector& v : vectors) {
    CVector w = v;
    // Two passes of modified Gram-Schmidt keep the basis orthonormal to
    // machine precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const CVector& b : out.basis) w -= b.dot(w) * b;
    const double n = w.norm();
    if (n > rank_tol) out.basis.push_back(w / n);
  }
  return out;
}

}  // namespace qsimul
