#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qsimul/errors.hpp"
#include "qsimul/tolerances.hpp"

namespace qsimul {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double tolerance = tol::hermitian);

/// Eigendecomposition of a Hermitian matrix: eigenvalues ascending,
/// eigenvectors as unitary columns. Throws NotHermitian.
struct EighResult {
  RVector eigenvalues;
  CMatrix eigenvectors;
};
EighResult eigh(const CMatrix& m, double tolerance = tol::hermitian);

/// Orthogonal projection: Hermitian, idempotent, with integer rank.
class Projection {
 public:
  /// Validates idempotence, hermiticity and integer trace.
  static Projection from_matrix(CMatrix m, double tolerance = tol::projection);
  /// P = B B^dagger for orthonormal columns B (not re-validated).
  static Projection from_basis(const CMatrix& orthonormal_columns);
  static Projection zero(Eigen::Index dim);
  static Projection identity(Eigen::Index dim);

  const CMatrix& matrix() const { return matrix_; }
  int rank() const { return rank_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  /// Orthonormal basis of the range (empty matrix for rank 0).
  CMatrix range_basis() const;

 private:
  Projection(CMatrix m, int rank) : matrix_(std::move(m)), rank_(rank) {}
  CMatrix matrix_;
  int rank_ = 0;
};

/// Projection onto range(e) intersect range(f), computed from the null space
/// of (I - E) + (I - F): eigenvectors with eigenvalue <= tol::meet span the
/// intersection.
Projection projection_meet(const Projection& e, const Projection& f);

/// Kronecker product with system-major index convention:
/// (i_sys, i_probe) -> i_sys * dim_probe + i_probe.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

/// Trace over the probe factor of an operator on H (x) K under the tensor()
/// index convention. Preserves the total trace.
CMatrix partial_trace_probe(const CMatrix& m, Eigen::Index dim_system,
                            Eigen::Index dim_probe);

/// A subspace of C^d held as an orthonormal basis.
struct Subspace {
  std::vector<CVector> basis;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis.size()); }
  Eigen::Index ambient_dim() const {
    return basis.empty() ? 0 : basis.front().size();
  }
  CVector project(const CVector& v) const;
  /// d x dim matrix of basis columns (d x 0 when empty).
  CMatrix basis_matrix(Eigen::Index ambient) const;
};

/// Gram-Schmidt with rank revelation: inputs whose residual norm is at most
/// rank_tol are dropped.
Subspace orthonormalize(const std::vector<CVector>& vectors,
                        double rank_tol = tol::rank);

}  // namespace qsimul
