#include "qsimul/observable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsimul {

namespace {

void validate_spectrum(const CMatrix& matrix,
                       const std::vector<SpectralComponent>& spectrum) {
  const Eigen::Index d = matrix.rows();
  CMatrix completeness = CMatrix::Zero(d, d);
  CMatrix reconstruction = CMatrix::Zero(d, d);
  for (const auto& c : spectrum) {
    if (c.projection.dim() != d) {
      throw DimensionMismatch("Observable: projection dimension mismatch");
    }
    completeness += c.projection.matrix();
    reconstruction += c.value * c.projection.matrix();
  }
  if (max_abs(completeness - CMatrix::Identity(d, d)) > 1e-9) {
    throw InvalidValue("Observable: spectral projections do not sum to I");
  }
  if (max_abs(reconstruction - matrix) > 1e-8) {
    throw InvalidValue("Observable: spectral reconstruction failed");
  }
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    for (std::size_t j = i + 1; j < spectrum.size(); ++j) {
      if (spectrum[j].value <= spectrum[i].value) {
        throw InvalidValue("Observable: spectral values not ascending");
      }
      if (max_abs(spectrum[i].projection.matrix() *
                  spectrum[j].projection.matrix()) > 1e-8) {
        throw InvalidValue("Observable: spectral projections not orthogonal");
      }
    }
  }
}

}  // namespace

Observable Observable::from_components(
    std::vector<SpectralComponent> components) {
  if (components.empty()) {
    throw InvalidValue("Observable: empty spectrum");
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  const Eigen::Index d = components.front().projection.dim();
  CMatrix m = CMatrix::Zero(d, d);
  for (const auto& c : components) {
    if (c.projection.dim() != d) {
      throw DimensionMismatch("Observable: projection dimension mismatch");
    }
    m += c.value * c.projection.matrix();
  }
  m = (m + m.adjoint().eval()) / 2.0;
  validate_spectrum(m, components);
  return Observable(std::move(m), std::move(components));
}

std::vector<double> Observable::values() const {
  std::vector<double> out;
  out.reserve(spectrum_.size());
  for (const auto& c : spectrum_) out.push_back(c.value);
  return out;
}

Projection Observable::spectral_projection(double x, double match_tol) const {
  if (auto i = value_index(x, match_tol)) return spectrum_[*i].projection;
  return Projection::zero(dim());
}

std::optional<std::size_t> Observable::value_index(double x,
                                                   double match_tol) const {
  std::optional<std::size_t> best;
  double best_gap = match_tol;
  for (std::size_t i = 0; i < spectrum_.size(); ++i) {
    const double gap = std::abs(spectrum_[i].value - x);
    if (gap <= best_gap) {
      best = i;
      best_gap = gap;
    }
  }
  return best;
}

Observable spectralize(const CMatrix& m, double cluster_tol) {
  const auto [vals, vecs] = eigh(m);
  const Eigen::Index d = vals.size();
  std::vector<SpectralComponent> components;
  Eigen::Index i = 0;
  while (i < d) {
    Eigen::Index j = i;
    while (j + 1 < d && vals(j + 1) - vals(j) <= cluster_tol) ++j;
    const double value = vals.segment(i, j - i + 1).mean();
    components.push_back(
        {value, Projection::from_basis(vecs.middleCols(i, j - i + 1))});
    i = j + 1;
  }
  Observable out = Observable::from_components(std::move(components));
  if (max_abs(out.matrix() - m) > 1e-8) {
    throw InvalidValue("spectralize: reconstruction drifted from input");
  }
  return out;
}

Observable pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return spectralize(m);
}

Observable pauli_y() {
  CMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return spectralize(m);
}

Observable pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return spectralize(m);
}

Observable identity_observable(Eigen::Index dim) {
  return Observable::from_components({{1.0, Projection::identity(dim)}});
}

PureState::PureState(CVector v) : v_(std::move(v)) {
  if (std::abs(v_.norm() - 1.0) > 1e-9) {
    throw InvalidValue("PureState: vector is not unit norm");
  }
}

PureState PureState::normalized(CVector v) {
  const double n = v.norm();
  if (n < 1e-12) throw InvalidValue("PureState: cannot normalize zero vector");
  return PureState(v / n);
}

PureState PureState::basis_state(Eigen::Index dim, Eigen::Index k) {
  CVector v = CVector::Zero(dim);
  v(k) = 1.0;
  return PureState(std::move(v));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(tensor(a.vector(), b.vector()));
}

Complex expectation(const CMatrix& op, const PureState& psi) {
  if (op.rows() != psi.dim()) {
    throw DimensionMismatch("expectation: operator/state dimension mismatch");
  }
  return psi.vector().dot(op * psi.vector());
}

OutcomeDistribution OutcomeDistribution::from_raw(std::map<double, double> raw) {
  double sum = 0;
  for (auto& [x, p] : raw) {
    if (p < -1e-10) {
      throw InvalidValue("OutcomeDistribution: negative probability");
    }
    p = std::clamp(p, 0.0, 1.0);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidValue("OutcomeDistribution: probabilities do not sum to 1");
  }
  OutcomeDistribution out;
  out.p_ = std::move(raw);
  return out;
}

double OutcomeDistribution::probability(double x, double match_tol) const {
  double best_gap = match_tol;
  double value = 0.0;
  for (const auto& [outcome, p] : p_) {
    const double gap = std::abs(outcome - x);
    if (gap <= best_gap) {
      best_gap = gap;
      value = p;
    }
  }
  return value;
}

double OutcomeDistribution::sum() const {
  return std::accumulate(p_.begin(), p_.end(), 0.0,
                         [](double s, const auto& kv) { return s + kv.second; });
}

OutcomeDistribution born_distribution(const Observable& a,
                                      const PureState& psi) {
  if (a.dim() != psi.dim()) {
    throw DimensionMismatch("born_distribution: dimension mismatch");
  }
  std::map<double, double> raw;
  for (const auto& c : a.spectrum()) {
    raw[c.value] = expectation(c.projection.matrix(), psi).real();
  }
  return OutcomeDistribution::from_raw(std::move(raw));
}

double std_dev(const Observable& a, const PureState& psi) {
  if (a.dim() != psi.dim()) {
    throw DimensionMismatch("std_dev: dimension mismatch");
  }
  const CVector ap = a.matrix() * psi.vector();
  const double second = ap.squaredNorm();
  const double mean = psi.vector().dot(ap).real();
  double radicand = second - mean * mean;
  if (radicand < -1e-12) {
    throw InvalidValue("std_dev: negative variance beyond roundoff");
  }
  return std::sqrt(std::max(radicand, 0.0));
}

std::optional<double> eigenstate_value(const Observable& a,
                                       const PureState& psi,
                                       double tolerance) {
  for (const auto& c : a.spectrum()) {
    if ((c.projection.matrix() * psi.vector() - psi.vector()).norm() <=
        tolerance) {
      return c.value;
    }
  }
  return std::nullopt;
}

}  // namespace qsimul
