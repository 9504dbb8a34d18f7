#include "qsimul/correlation.hpp"

#include <algorithm>
#include <cmath>

namespace qsimul {

namespace {

void require_same_dims(const Observable& a, const Observable& b,
                       const PureState& psi, const char* where) {
  if (a.dim() != b.dim() || a.dim() != psi.dim()) {
    throw DimensionMismatch(std::string(where) + ": dimension mismatch");
  }
}

template <typename Report>
void settle(Report& report) {
  bool all_true = true;
  bool all_false = true;
  for (const auto& [label, verdict] : report.verdicts) {
    if (verdict) {
      all_false = false;
    } else {
      all_true = false;
    }
  }
  report.inconsistent = !(all_true || all_false);
  report.consensus = all_true && !report.verdicts.empty();
}

/// Outcome values of both observables merged within tol::outcome_match.
std::vector<double> merged_outcomes(const Observable& a, const Observable& b) {
  std::vector<double> xs = a.values();
  const std::vector<double> ys = b.values();
  xs.insert(xs.end(), ys.begin(), ys.end());
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (out.empty() || x - out.back() > tol::outcome_match) {
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

CommutativityReport commute_in_state(const Observable& a, const Observable& b,
                                     const PureState& psi) {
  require_same_dims(a, b, psi, "commute_in_state");
  CommutativityReport report;

  double commutator = 0;
  for (const auto& ca : a.spectrum()) {
    for (const auto& cb : b.spectrum()) {
      const CMatrix& e = ca.projection.matrix();
      const CMatrix& f = cb.projection.matrix();
      commutator = std::max(
          commutator,
          (e * (f * psi.vector()) - f * (e * psi.vector())).norm());
    }
  }

  // Meets of all spectral pairs give both the common-eigenvector span and the
  // strong quasiprobability total.
  const Eigen::Index d = psi.dim();
  CMatrix common = CMatrix::Zero(d, d);
  double strong_sum = 0;
  for (const auto& ca : a.spectrum()) {
    for (const auto& cb : b.spectrum()) {
      const Projection meet = projection_meet(ca.projection, cb.projection);
      common += meet.matrix();
      strong_sum += expectation(meet.matrix(), psi).real();
    }
  }
  const double superposition = (psi.vector() - common * psi.vector()).norm();
  const double total = std::abs(strong_sum - 1.0);

  report.residuals["G_i"] = total;
  report.residuals["G_ii"] = commutator;
  report.residuals["G_iii"] = superposition;
  report.residuals["G_iv"] = total;
  for (const auto& [label, r] : report.residuals) {
    report.verdicts[label] = r <= tol::verdict;
  }
  settle(report);
  return report;
}

bool nowhere_commuting(const Observable& a, const Observable& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("nowhere_commuting: dimension mismatch");
  }
  for (const auto& ca : a.spectrum()) {
    for (const auto& cb : b.spectrum()) {
      if (projection_meet(ca.projection, cb.projection).rank() > 0) {
        return false;
      }
    }
  }
  return true;
}

Subspace cyclic_subspace(const std::vector<Observable>& ops,
                         const PureState& psi) {
  for (const auto& op : ops) {
    if (op.dim() != psi.dim()) {
      throw DimensionMismatch("cyclic_subspace: dimension mismatch");
    }
  }
  Subspace space = orthonormalize({psi.vector()});
  bool grew = true;
  while (grew && space.dim() < psi.dim()) {
    grew = false;
    for (const auto& op : ops) {
      const std::size_t snapshot = space.basis.size();
      for (std::size_t i = 0; i < snapshot; ++i) {
        CVector w = op.matrix() * space.basis[i];
        for (int pass = 0; pass < 2; ++pass)
          for (const CVector& v : space.basis) w -= v.dot(w) * v;
        const double n = w.norm();
        if (n > tol::rank) {
          space.basis.push_back(w / n);
          grew = true;
        }
      }
    }
  }
  return space;
}

CorrelationReport perfectly_correlated(const Observable& a,
                                       const Observable& b,
                                       const PureState& psi) {
  require_same_dims(a, b, psi, "perfectly_correlated");
  CorrelationReport report;

  const QuasiDistribution weak = weak_jqpd(a, b, psi);
  const QuasiDistribution strong = strong_jqpd(a, b, psi);
  const OutcomeDistribution born_a = born_distribution(a, psi);
  const OutcomeDistribution born_b = born_distribution(b, psi);

  // C_i: the defining property, Pr_W vanishes off the diagonal.
  report.residuals["C_i"] = weak.max_abs_offdiagonal();

  // C_ii: commutation in psi plus unit diagonal mass of the JPD.
  const CommutativityReport comm = commute_in_state(a, b, psi);
  double comm_worst = 0;
  for (const auto& [label, r] : comm.residuals) {
    comm_worst = std::max(comm_worst, r);
  }
  report.residuals["C_ii"] =
      std::max(comm_worst, std::abs(weak.diagonal_sum() - 1.0));

  // C_iv / C_vii: A and B agree as operators on C(A, psi).
  const Subspace cyclic = cyclic_subspace({a}, psi);
  const CMatrix diff = a.matrix() - b.matrix();
  double op_residual = 0;
  for (const CVector& v : cyclic.basis) {
    op_residual = std::max(op_residual, (diff * v).norm());
  }
  report.residuals["C_iv"] = op_residual;
  report.residuals["C_vii"] = op_residual;

  // C_v / C_vi: spectral projections (and hence Born distributions) agree on
  // C(A, psi), over the merged outcome grid.
  double proj_residual = 0;
  double born_residual = 0;
  for (double x : merged_outcomes(a, b)) {
    const CMatrix ex = a.spectral_projection(x).matrix();
    const CMatrix fx = b.spectral_projection(x).matrix();
    for (const CVector& v : cyclic.basis) {
      proj_residual = std::max(proj_residual, ((ex - fx) * v).norm());
      born_residual = std::max(born_residual, std::abs(v.dot((ex - fx) * v)));
    }
  }
  report.residuals["C_v"] = proj_residual;
  report.residuals["C_vi"] = born_residual;

  // C_viii: unit diagonal mass of the strong distribution.
  report.residuals["C_viii"] = std::abs(strong.diagonal_sum() - 1.0);

  // C_ix: weak values of the spectral projections of A under postselection
  // |B=b>, defined only for nondegenerate b with positive probability.
  double weak_value_residual = 0;
  bool any_postselection = false;
  for (const auto& cb : b.spectrum()) {
    if (born_b.probability(cb.value) <= tol::condition) continue;
    if (cb.projection.rank() != 1) continue;
    any_postselection = true;
    const PureState post =
        PureState::normalized(cb.projection.range_basis().col(0));
    for (const auto& ca : a.spectrum()) {
      const Complex w = weak_value(ca.projection.matrix(), psi, post).value;
      const double delta =
          std::abs(ca.value - cb.value) <= tol::outcome_match ? 1.0 : 0.0;
      weak_value_residual = std::max(weak_value_residual, std::abs(w - delta));
    }
  }
  if (any_postselection) {
    report.residuals["C_ix"] = weak_value_residual;
  } else {
    report.skipped.push_back("C_ix");
  }

  // C_x: Pr_S = Pr_W = delta_{a,b} Born(A).
  double coincidence = 0;
  for (const auto& ca : a.spectrum()) {
    for (const auto& cb : b.spectrum()) {
      const Complex w = weak.entry(ca.value, cb.value);
      const Complex s = strong.entry(ca.value, cb.value);
      const double delta =
          std::abs(ca.value - cb.value) <= tol::outcome_match
              ? born_a.probability(ca.value)
              : 0.0;
      coincidence = std::max({coincidence, std::abs(w - s), std::abs(w - delta)});
    }
  }
  report.residuals["C_x"] = coincidence;

  for (const auto& [label, r] : report.residuals) {
    report.verdicts[label] = r <= tol::verdict;
  }
  settle(report);
  return report;
}

bool transitivity_check(const Observable& a, const Observable& b,
                        const Observable& c, const PureState& psi) {
  if (!perfectly_correlated(a, b, psi).consensus ||
      !perfectly_correlated(b, c, psi).consensus) {
    throw PreconditionUnmet(
        "transitivity_check: premises A=B and B=C do not hold in psi");
  }
  return perfectly_correlated(a, c, psi).consensus;
}

QuasiDistribution jpd(const Observable& a, const Observable& b,
                      const PureState& psi) {
  if (!commute_in_state(a, b, psi).consensus) {
    throw NoJointDistribution(
        "jpd: observables do not commute in the given state");
  }
  return strong_jqpd(a, b, psi);
}

}  // namespace qsimul
