#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsimul/linalg.hpp"

namespace qsimul {

/// One spectral value with its eigenprojection.
struct SpectralComponent {
  double value;
  Projection projection;
};

/// Hermitian operator with a cached spectral decomposition. Spectral values
/// are strictly ascending after clustering; their projections are mutually
/// orthogonal and sum to the identity.
class Observable {
 public:
  /// Assembles an observable from components; validates completeness,
  /// orthogonality and reconstruction.
  static Observable from_components(std::vector<SpectralComponent> components);

  const CMatrix& matrix() const { return matrix_; }
  const std::vector<SpectralComponent>& spectrum() const { return spectrum_; }
  Eigen::Index dim() const { return matrix_.rows(); }

  std::vector<double> values() const;

  /// E^A(x): the eigenprojection for x, or the zero projection when x is not
  /// a spectral value within match_tol.
  Projection spectral_projection(double x,
                                 double match_tol = tol::outcome_match) const;
  /// Index of the spectral value matching x, if any.
  std::optional<std::size_t> value_index(
      double x, double match_tol = tol::outcome_match) const;

 private:
  Observable(CMatrix m, std::vector<SpectralComponent> s)
      : matrix_(std::move(m)), spectrum_(std::move(s)) {}
  CMatrix matrix_;
  std::vector<SpectralComponent> spectrum_;
};

/// Diagonalizes a Hermitian matrix and merges eigenvalues within cluster_tol
/// of their neighbor into a single spectral value (the cluster mean) with the
/// summed projection.
Observable spectralize(const CMatrix& m, double cluster_tol = tol::cluster);

Observable pauli_x();
Observable pauli_y();
Observable pauli_z();
Observable identity_observable(Eigen::Index dim);

/// Unit vector in C^d.
class PureState {
 public:
  /// Requires | ||v|| - 1 | <= 1e-9.
  explicit PureState(CVector v);
  /// Normalizes; throws InvalidValue on (near-)zero input.
  static PureState normalized(CVector v);
  static PureState basis_state(Eigen::Index dim, Eigen::Index k);

  const CVector& vector() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }

 private:
  CVector v_;
};

PureState tensor(const PureState& a, const PureState& b);

Complex expectation(const CMatrix& op, const PureState& psi);

/// Probability distribution over real outcomes. Raw values may dip slightly
/// negative from roundoff; they are validated against -1e-10 and clipped
/// into [0, 1].
class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;
  static OutcomeDistribution from_raw(std::map<double, double> raw);

  const std::map<double, double>& entries() const { return p_; }
  /// Probability of the outcome matching x (0 when absent).
  double probability(double x, double match_tol = tol::outcome_match) const;
  double sum() const;

 private:
  std::map<double, double> p_;
};

/// p(a) = <psi| E^A(a) |psi>.
OutcomeDistribution born_distribution(const Observable& a,
                                      const PureState& psi);

/// sigma(A) = sqrt(<A^2> - <A>^2) in psi.
double std_dev(const Observable& a, const PureState& psi);

/// True when || E^A(x) psi - psi || <= tolerance for some spectral value x
/// (which is then reported).
std::optional<double> eigenstate_value(const Observable& a,
                                       const PureState& psi,
                                       double tolerance = tol::verdict);

}  // namespace qsimul
