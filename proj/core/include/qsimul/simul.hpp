#pragma once

#include <cstdint>
#include <optional>

#include "qsimul/correlation.hpp"
#include "qsimul/measproc.hpp"

namespace qsimul {

enum class SimulMethod {
  CommutingCase,
  EigenstateCase,
  Dim2Case,
  FeasibilitySearch,
  Undecided,
};

/// Outcome of checking a simultaneous measurement claim. When a witness
/// process verifies, both perfect-correlation reports are consensus-true and
/// the recorded consequences (vanishing rms errors, vanishing projection
/// commutator means) hold within tol::verdict.
struct SimultaneityReport {
  bool is_simultaneous = false;
  SimulMethod method = SimulMethod::Undecided;
  std::map<std::string, double> residuals;
  CorrelationReport a_side;
  CorrelationReport b_side;
};

/// Checks that f(M(dt)) is perfectly correlated with A (x) I and g(M(dt))
/// with B (x) I in psi (x) xi, and records the consequence diagnostics.
SimultaneityReport verify_simultaneous(const SimultaneousProcess& sp,
                                       const Observable& a,
                                       const Observable& b,
                                       const PureState& psi);

/// Joint distribution of the two post-processed outputs, computed both from
/// the Born rule on the commuting pair (f(M(dt)), g(M(dt))) and from the POVM
/// pushforward; the routes must agree within 1e-9.
struct JointOutputDistribution {
  std::map<std::pair<double, double>, double> entries;
  std::string source_id;

  double probability(double x, double y,
                     double match_tol = tol::outcome_match) const;
  double sum() const;
};
JointOutputDistribution joint_output(const SimultaneousProcess& sp,
                                     const PureState& psi,
                                     double* cross_residual = nullptr);

/// max_{x,y} |joint(x,y) - Pr_W{A=x, B=y}| for a verified simultaneous
/// measurement (throws PreconditionUnmet otherwise).
double joint_output_equals_weak(const SimultaneousProcess& sp,
                                const Observable& a, const Observable& b,
                                const PureState& psi);

enum class MarginalMode { Commute, Simul };

/// Residuals of the POVM marginal conditions: row sums against E^A(x) and
/// column sums against E^B(y), tested on the cyclic subspace C(A,B,psi)
/// (Commute mode) or on C(A,psi) / C(B,psi) (Simul mode).
struct MarginalCheck {
  double max_row_residual = 0;
  double max_col_residual = 0;
  bool pass = false;
};
MarginalCheck check_povm_marginals(const Povm& p, const Observable& a,
                                   const Observable& b, const PureState& psi,
                                   MarginalMode mode,
                                   double threshold = tol::verdict);

/// Simultaneous measurement available in any eigenstate of either
/// observable: measure the other observable exactly and report the known
/// eigenvalue as the constant first output. Throws NotEigenstate.
SimultaneousProcess construct_eigenstate_measurement(const Observable& a,
                                                     const Observable& b,
                                                     const PureState& psi);

/// Simultaneous measurement for observables that commute in psi: measure the
/// joint spectral projections (meets) with fresh meter labels, reading the
/// A and B values off the label. Throws PreconditionUnmet when the
/// observables do not commute in psi.
SimultaneousProcess construct_commuting_measurement(const Observable& a,
                                                    const Observable& b,
                                                    const PureState& psi);

/// Same measurement embedded in a larger probe; outputs are unchanged but
/// the process is structurally different.
SimultaneousProcess pad_probe(const SimultaneousProcess& sp,
                              Eigen::Index extra_dims);

/// The dim-2 equivalence: simultaneous measurability, entrywise nonnegative
/// real weak distribution, and (commute in psi or eigenstate of either).
struct Dim2Report {
  bool simul = false;
  bool weak_nonneg = false;
  bool commute_or_eigen = false;
  bool consistent = false;
};
Dim2Report dim2_characterization(const Observable& a, const Observable& b,
                                 const PureState& psi);

/// Heuristic alternating-projection search for a 2-D POVM witness with the
/// Simul-mode marginals: least-squares projection onto the affine constraint
/// set alternated with eigenvalue clipping onto the positive cone. Returns a
/// witness passing check_povm_marginals within 1e-7, or nothing after iters
/// sweeps (which is inconclusive, not a refutation).
std::optional<Povm> feasibility_search(const Observable& a,
                                       const Observable& b,
                                       const PureState& psi, int iters,
                                       std::uint64_t seed);

}  // namespace qsimul
