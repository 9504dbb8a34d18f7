#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsimul/observable.hpp"

namespace qsimul {

/// Total real-valued map on a finite set of meter outcomes. Lookups match the
/// nearest key within tol::outcome_match and throw UnmappedOutcome otherwise.
class OutcomeMap {
 public:
  OutcomeMap() = default;
  explicit OutcomeMap(std::map<double, double> entries)
      : entries_(std::move(entries)) {}

  static OutcomeMap identity_on(const std::vector<double>& outcomes);
  static OutcomeMap constant_on(const std::vector<double>& outcomes,
                                double value);

  double at(double outcome) const;
  bool covers(double outcome) const;
  const std::map<double, double>& entries() const { return entries_; }

 private:
  std::map<double, double> entries_;
};

/// Measuring process (K, sigma, U, M): probe space dimension, probe state,
/// interaction unitary on H (x) K, and meter observable on K.
class MeasuringProcess {
 public:
  MeasuringProcess(Eigen::Index probe_dim, PureState probe_state,
                   CMatrix unitary, Observable meter, std::string id = {});

  Eigen::Index probe_dim() const { return probe_dim_; }
  Eigen::Index system_dim() const { return unitary_.rows() / probe_dim_; }
  const PureState& probe_state() const { return probe_state_; }
  const CMatrix& unitary() const { return unitary_; }
  const Observable& meter() const { return meter_; }
  const std::string& id() const { return id_; }

 private:
  Eigen::Index probe_dim_;
  PureState probe_state_;
  CMatrix unitary_;
  Observable meter_;
  std::string id_;
};

/// Simultaneous measuring process: a measuring process with two outcome maps
/// turning meter values into A-side and B-side readings. The maps must cover
/// every spectral value of the meter.
class SimultaneousProcess {
 public:
  SimultaneousProcess(MeasuringProcess base, OutcomeMap f, OutcomeMap g);

  const MeasuringProcess& base() const { return base_; }
  const OutcomeMap& f() const { return f_; }
  const OutcomeMap& g() const { return g_; }

 private:
  MeasuringProcess base_;
  OutcomeMap f_;
  OutcomeMap g_;
};

/// Positive-operator-valued measure with 1-D or 2-D outcome labels.
class Povm {
 public:
  static Povm one_dim(std::vector<double> outcomes,
                      std::vector<CMatrix> elements,
                      double positivity_tol = 1e-8,
                      double completeness_tol = 1e-8);
  static Povm two_dim(std::vector<std::pair<double, double>> outcomes,
                      std::vector<CMatrix> elements,
                      double positivity_tol = 1e-8,
                      double completeness_tol = 1e-8);

  int arity() const { return arity_; }
  std::size_t size() const { return elements_.size(); }
  Eigen::Index dim() const {
    return elements_.empty() ? 0 : elements_.front().rows();
  }
  const std::vector<CMatrix>& elements() const { return elements_; }
  /// Outcome labels; for 1-D POVMs the second coordinate is unused.
  const std::vector<std::pair<double, double>>& outcomes() const {
    return outcomes_;
  }

 private:
  Povm(int arity, std::vector<std::pair<double, double>> outcomes,
       std::vector<CMatrix> elements)
      : arity_(arity),
        outcomes_(std::move(outcomes)),
        elements_(std::move(elements)) {}
  static Povm validated(int arity,
                        std::vector<std::pair<double, double>> outcomes,
                        std::vector<CMatrix> elements, double positivity_tol,
                        double completeness_tol);
  int arity_;
  std::vector<std::pair<double, double>> outcomes_;
  std::vector<CMatrix> elements_;
};

struct ErrorBudget {
  double eps_a = 0;
  double eps_b = 0;
  double sigma_a = 0;
  double sigma_b = 0;
  double commutator_bound = 0;  // |<psi|[A,B]|psi>| / 2
};

struct UncertaintyReport {
  double uup_lhs = 0;  // eps_a*eps_b + eps_a*sigma_b + sigma_a*eps_b
  bool uup_holds = false;
  double hup_lhs = 0;  // eps_a*eps_b
  bool hup_holds = false;
  double rhs = 0;
};

/// The meter observable moved to the Heisenberg picture at the end of the
/// interaction: spectralize(U^dagger (I (x) M) U) on H (x) K.
Observable heisenberg_meter(const MeasuringProcess& mp);

/// The POVM of the process: Pi(x) = Tr_K[ E^{M(dt)}(x) (I (x) |xi><xi|) ],
/// one element per meter spectral value.
Povm extract_povm(const MeasuringProcess& mp);

/// f(M(dt)): the Heisenberg meter pushed through an outcome map, merging
/// spectral values that map to the same reading.
Observable mapped_heisenberg_meter(const MeasuringProcess& mp,
                                   const OutcomeMap& map);

/// A (x) I on H (x) K, keeping A's spectral values.
Observable extend_by_probe(const Observable& a, Eigen::Index probe_dim);

/// Output distribution of the measurement on psi, computed both from the
/// Born rule on the Heisenberg meter and from the POVM. The two routes must
/// agree within 1e-9; the reported cross-residual is written to
/// cross_residual when given.
OutcomeDistribution output_distribution(const MeasuringProcess& mp,
                                        const PureState& psi,
                                        double* cross_residual = nullptr);

enum class NoiseSide { A, B };

/// N(A) = f(M(dt)) - A (x) I (A-side) or with g on the B-side, built by
/// applying the outcome map to the spectral values of the Heisenberg meter.
CMatrix noise_operator(const SimultaneousProcess& sp, const Observable& target,
                       NoiseSide side);

/// eps(A) = ||N(A) psi (x) xi||, likewise for B, plus the standard deviations
/// and the commutator bound.
ErrorBudget rms_errors(const SimultaneousProcess& sp, const Observable& a,
                       const Observable& b, const PureState& psi);

/// Universal relation (always true for budgets from rms_errors) and the
/// Heisenberg product form (not universally valid).
UncertaintyReport uncertainty_report(const ErrorBudget& budget);

/// Exact measurement of b: probe of one dimension per spectral value in
/// state |0>, controlled cyclic shift sum_j E^B(b_j) (x) S^j, and the meter
/// carrying b's spectral values on the probe axes.
MeasuringProcess von_neumann_model(const Observable& b);

/// Process with U = I whose output carries no information about the system.
MeasuringProcess trivial_process(Eigen::Index system_dim,
                                 Eigen::Index probe_dim);

/// Whether the partial mean <psi| N |psi> of the noise operator is, as an
/// operator on the probe, a multiple of the identity; this is the hypothesis
/// under which the Heisenberg product form is claimed.
bool mean_error_probe_independent(const SimultaneousProcess& sp,
                                  const Observable& target, NoiseSide side,
                                  const PureState& psi,
                                  double tolerance = tol::verdict);

}  // namespace qsimul
