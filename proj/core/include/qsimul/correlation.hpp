#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsimul/quasiprob.hpp"

namespace qsimul {

/// Verdicts for the four equivalent state-dependent commutativity conditions.
/// All verdicts must agree; a disagreement flags the report inconsistent.
struct CommutativityReport {
  std::map<std::string, bool> verdicts;    // G_i, G_ii, G_iii, G_iv
  std::map<std::string, double> residuals;
  bool consensus = false;     // the unanimous verdict (false if inconsistent)
  bool inconsistent = false;  // verdicts disagree
};

/// Verdicts for the equivalent characterizations of identical correlation.
/// C_ix is skipped (not failed) when every positive-probability eigenvalue of
/// the second observable is degenerate.
struct CorrelationReport {
  std::map<std::string, bool> verdicts;    // C_i .. C_x (computed ones)
  std::map<std::string, double> residuals;
  std::vector<std::string> skipped;
  bool consensus = false;
  bool inconsistent = false;
};

/// Evaluates the state-dependent commutativity conditions:
///   G_ii : max_{a,b} ||[E^A(a), E^B(b)] psi||
///   G_iii: distance of psi from the span of common eigenvectors
///   G_iv : |sum_{a,b} <psi| E^A(a) ^ E^B(b) |psi> - 1|
/// G_i (existence of a joint probability distribution) is reported equal to
/// G_iv. Residual threshold tol::verdict.
CommutativityReport commute_in_state(const Observable& a, const Observable& b,
                                     const PureState& psi);

/// True when every pair of spectral projections has a rank-0 meet, i.e. the
/// observables share no eigenvector.
bool nowhere_commuting(const Observable& a, const Observable& b);

/// Smallest subspace containing psi and invariant under every operator in
/// ops. Built breadth-first: operators are applied to the growing orthonormal
/// basis, in the given order, until the dimension stabilizes.
Subspace cyclic_subspace(const std::vector<Observable>& ops,
                         const PureState& psi);

/// Evaluates the identical-correlation conditions (labels C_i .. C_x):
///   C_i   : max off-diagonal |Pr_W|
///   C_ii  : commutation in psi and diagonal weak sum 1
///   C_iv  : ||(A - B) v|| on a basis of C(A, psi)
///   C_v   : ||(E^A(x) - E^B(x)) v|| over matched outcomes x on C(A, psi)
///   C_vi  : Born distributions agree on basis vectors of C(A, psi)
///   C_vii : same operator residual as C_iv
///   C_viii: diagonal strong sum 1
///   C_ix  : weak values of E^A(a) equal delta_{a,b} under nondegenerate
///           postselection on B (skipped when no such postselection exists)
///   C_x   : Pr_S = Pr_W = delta * Born
CorrelationReport perfectly_correlated(const Observable& a,
                                       const Observable& b,
                                       const PureState& psi);

/// Requires A =_psi B and B =_psi C (throws PreconditionUnmet otherwise) and
/// returns whether A =_psi C.
bool transitivity_check(const Observable& a, const Observable& b,
                        const Observable& c, const PureState& psi);

/// The joint probability distribution of A and B in psi, defined exactly when
/// they commute in psi (throws NoJointDistribution otherwise). Returned in
/// the strong flavor; the weak flavor coincides with it here.
QuasiDistribution jpd(const Observable& a, const Observable& b,
                      const PureState& psi);

}  // namespace qsimul
