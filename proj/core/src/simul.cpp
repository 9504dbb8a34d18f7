#include "qsimul/simul.hpp"

#include <algorithm>
#include <cmath>

#include "qsimul/random.hpp"

namespace qsimul {

namespace {

double outcome_gap(const std::pair<double, double>& p, double x, double y) {
  return std::max(std::abs(p.first - x), std::abs(p.second - y));
}

}  // namespace

double JointOutputDistribution::probability(double x, double y,
                                            double match_tol) const {
  for (const auto& [key, p] : entries) {
    if (outcome_gap(key, x, y) <= match_tol) return p;
  }
  return 0.0;
}

double JointOutputDistribution::sum() const {
  double s = 0;
  for (const auto& [key, p] : entries) s += p;
  return s;
}

SimultaneityReport verify_simultaneous(const SimultaneousProcess& sp,
                                       const Observable& a,
                                       const Observable& b,
                                       const PureState& psi) {
  const MeasuringProcess& mp = sp.base();
  if (a.dim() != b.dim() || a.dim() != psi.dim() ||
      a.dim() != mp.system_dim()) {
    throw DimensionMismatch("verify_simultaneous: dimension mismatch");
  }
  const Observable f_meter = mapped_heisenberg_meter(mp, sp.f());
  const Observable g_meter = mapped_heisenberg_meter(mp, sp.g());
  const Observable a_ext = extend_by_probe(a, mp.probe_dim());
  const Observable b_ext = extend_by_probe(b, mp.probe_dim());
  const PureState composite = tensor(psi, mp.probe_state());

  SimultaneityReport report;
  report.a_side = perfectly_correlated(f_meter, a_ext, composite);
  report.b_side = perfectly_correlated(g_meter, b_ext, composite);
  report.is_simultaneous =
      report.a_side.consensus && report.b_side.consensus;

  // Consequences of simultaneity: vanishing rms errors and vanishing mean
  // projection commutators.
  const ErrorBudget budget = rms_errors(sp, a, b, psi);
  report.residuals["eps_a"] = budget.eps_a;
  report.residuals["eps_b"] = budget.eps_b;
  double commutator_mean = 0;
  for (const auto& ca : a.spectrum()) {
    for (const auto& cb : b.spectrum()) {
      const CMatrix& e = ca.projection.matrix();
      const CMatrix& f = cb.projection.matrix();
      commutator_mean = std::max(
          commutator_mean, std::abs(expectation(e * f - f * e, psi)));
    }
  }
  report.residuals["projection_commutator_mean"] = commutator_mean;
  return report;
}

JointOutputDistribution joint_output(const SimultaneousProcess& sp,
                                     const PureState& psi,
                                     double* cross_residual) {
  const MeasuringProcess& mp = sp.base();
  if (psi.dim() != mp.system_dim()) {
    throw DimensionMismatch("joint_output: state dimension mismatch");
  }

  struct Cell {
    double x, y;
    double born = 0, povm = 0;
  };
  std::vector<Cell> cells;
  auto cell_for = [&](double x, double y) -> Cell& {
    for (Cell& c : cells) {
      if (std::abs(c.x - x) <= tol::outcome_match &&
          std::abs(c.y - y) <= tol::outcome_match) {
        return c;
      }
    }
    cells.push_back({x, y, 0, 0});
    return cells.back();
  };

  // Born route on the commuting pair of mapped Heisenberg meters, evaluated
  // per meter outcome so both readings come from the same spectral cell.
  const Observable mt = heisenberg_meter(mp);
  const PureState composite = tensor(psi, mp.probe_state());
  for (const auto& c : mt.spectrum()) {
    const auto idx = mp.meter().value_index(c.value);
    if (!idx) throw Error("joint_output: unmatched heisenberg meter value");
    const double label = mp.meter().spectrum()[*idx].value;
    cell_for(sp.f().at(label), sp.g().at(label)).born +=
        expectation(c.projection.matrix(), composite).real();
  }

  // POVM pushforward route.
  const Povm povm = extract_povm(mp);
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const double label = povm.outcomes()[i].first;
    cell_for(sp.f().at(label), sp.g().at(label)).povm +=
        expectation(povm.elements()[i], psi).real();
  }

  double worst = 0;
  std::map<std::pair<double, double>, double> entries;
  double total = 0;
  for (const Cell& c : cells) {
    worst = std::max(worst, std::abs(c.born - c.povm));
    if (c.born < -1e-10) {
      throw InvalidValue("joint_output: negative probability");
    }
    const double p = std::clamp(c.born, 0.0, 1.0);
    entries[{c.x, c.y}] += p;
    total += p;
  }
  if (cross_residual) *cross_residual = worst;
  if (worst > 1e-9) {
    throw Error("joint_output: Born and POVM routes disagree");
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidValue("joint_output: probabilities do not sum to 1");
  }
  JointOutputDistribution out;
  out.entries = std::move(entries);
  out.source_id = mp.id();
  return out;
}

double joint_output_equals_weak(const SimultaneousProcess& sp,
                                const Observable& a, const Observable& b,
                                const PureState& psi) {
  if (!verify_simultaneous(sp, a, b, psi).is_simultaneous) {
    throw PreconditionUnmet(
        "joint_output_equals_weak: process is not a simultaneous measurement "
        "of the pair in psi");
  }
  const JointOutputDistribution joint = joint_output(sp, psi);
  const QuasiDistribution weak = weak_jqpd(a, b, psi);
  double worst = 0;
  for (const auto& [key, p] : joint.entries) {
    worst = std::max(worst,
                     std::abs(weak.entry(key.first, key.second) - p));
  }
  for (const auto& [key, w] : weak.entries()) {
    worst = std::max(
        worst, std::abs(w - joint.probability(key.first, key.second)));
  }
  return worst;
}

MarginalCheck check_povm_marginals(const Povm& p, const Observable& a,
                                   const Observable& b, const PureState& psi,
                                   MarginalMode mode, double threshold) {
  if (p.arity() != 2) {
    throw InvalidValue("check_povm_marginals: needs a 2-D POVM");
  }
  if (a.dim() != b.dim() || a.dim() != psi.dim() || a.dim() != p.dim()) {
    throw DimensionMismatch("check_povm_marginals: dimension mismatch");
  }
  for (const auto& ca : a.spectrum()) {
    for (const auto& cb : b.spectrum()) {
      const bool covered =
          std::any_of(p.outcomes().begin(), p.outcomes().end(),
                      [&](const auto& o) {
                        return outcome_gap(o, ca.value, cb.value) <=
                               tol::outcome_match;
                      });
      if (!covered) {
        throw OutcomeCoverage(
            "check_povm_marginals: POVM outcomes do not cover "
            "spec(A) x spec(B)");
      }
    }
  }

  Subspace row_space;
  Subspace col_space;
  if (mode == MarginalMode::Commute) {
    row_space = cyclic_subspace({a, b}, psi);
    col_space = row_space;
  } else {
    row_space = cyclic_subspace({a}, psi);
    col_space = cyclic_subspace({b}, psi);
  }
  auto group_residual = [&](bool by_first, const Observable& target,
                            const Subspace& space) {
    std::vector<std::pair<double, CMatrix>> groups;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double label =
          by_first ? p.outcomes()[i].first : p.outcomes()[i].second;
      auto it =
          std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
            return std::abs(g.first - label) <= tol::outcome_match;
          });
      if (it == groups.end()) {
        groups.emplace_back(label, p.elements()[i]);
      } else {
        it->second += p.elements()[i];
      }
    }
    double worst = 0;
    for (const auto& [label, total] : groups) {
      const CMatrix diff =
          total - target.spectral_projection(label).matrix();
      for (const CVector& v : space.basis) {
        worst = std::max(worst, (diff * v).norm());
      }
    }
    return worst;
  };

  MarginalCheck check;
  check.max_row_residual = group_residual(true, a, row_space);
  check.max_col_residual = group_residual(false, b, col_space);
  check.pass = std::max(check.max_row_residual, check.max_col_residual) <=
               threshold;
  return check;
}

SimultaneousProcess construct_eigenstate_measurement(const Observable& a,
                                                     const Observable& b,
                                                     const PureState& psi) {
  if (a.dim() != b.dim() || a.dim() != psi.dim()) {
    throw DimensionMismatch(
        "construct_eigenstate_measurement: dimension mismatch");
  }
  if (const auto a0 = eigenstate_value(a, psi)) {
    MeasuringProcess base = von_neumann_model(b);
    const std::vector<double> meter_values = base.meter().values();
    return SimultaneousProcess(std::move(base),
                               OutcomeMap::constant_on(meter_values, *a0),
                               OutcomeMap::identity_on(meter_values));
  }
  if (const auto b0 = eigenstate_value(b, psi)) {
    MeasuringProcess base = von_neumann_model(a);
    const std::vector<double> meter_values = base.meter().values();
    return SimultaneousProcess(std::move(base),
                               OutcomeMap::identity_on(meter_values),
                               OutcomeMap::constant_on(meter_values, *b0));
  }
  throw NotEigenstate(
      "construct_eigenstate_measurement: psi is not an eigenstate of either "
      "observable");
}

SimultaneousProcess construct_commuting_measurement(const Observable& a,
                                                    const Observable& b,
                                                    const PureState& psi) {
  if (a.dim() != b.dim() || a.dim() != psi.dim()) {
    throw DimensionMismatch(
        "construct_commuting_measurement: dimension mismatch");
  }
  if (!commute_in_state(a, b, psi).consensus) {
    throw PreconditionUnmet(
        "construct_commuting_measurement: observables do not commute in psi");
  }

  // Joint observable with one fresh label per nonzero meet, plus one label
  // for the remainder of the space. Measuring it exactly and reading the
  // meet's (a, b) pair off the label measures both observables at once on
  // the span of common eigenvectors, which contains psi.
  const Eigen::Index d = a.dim();
  std::vector<SpectralComponent> joint_components;
  std::map<double, double> f_entries;
  std::map<double, double> g_entries;
  CMatrix covered = CMatrix::Zero(d, d);
  double label = 0;
  for (const auto& ca : a.spectrum()) {
    for (const auto& cb : b.spectrum()) {
      const Projection meet = projection_meet(ca.projection, cb.projection);
      if (meet.rank() == 0) continue;
      covered += meet.matrix();
      joint_components.push_back({label, meet});
      f_entries[label] = ca.value;
      g_entries[label] = cb.value;
      label += 1;
    }
  }
  const CMatrix rest = CMatrix::Identity(d, d) - covered;
  if (std::lround(rest.trace().real()) > 0) {
    joint_components.push_back({label, Projection::from_matrix(rest)});
    f_entries[label] = a.spectrum().front().value;
    g_entries[label] = b.spectrum().front().value;
  }
  const Observable joint =
      Observable::from_components(std::move(joint_components));
  return SimultaneousProcess(von_neumann_model(joint),
                             OutcomeMap(std::move(f_entries)),
                             OutcomeMap(std::move(g_entries)));
}

SimultaneousProcess pad_probe(const SimultaneousProcess& sp,
                              Eigen::Index extra_dims) {
  const MeasuringProcess& mp = sp.base();
  const Eigen::Index dh = mp.system_dim();
  const Eigen::Index dk = mp.probe_dim();
  const Eigen::Index dk2 = dk + extra_dims;

  CMatrix u2 = CMatrix::Zero(dh * dk2, dh * dk2);
  for (Eigen::Index i = 0; i < dh; ++i) {
    for (Eigen::Index j = 0; j < dh; ++j) {
      for (Eigen::Index k = 0; k < dk; ++k) {
        for (Eigen::Index l = 0; l < dk; ++l) {
          u2(i * dk2 + k, j * dk2 + l) = mp.unitary()(i * dk + k, j * dk + l);
        }
      }
    }
    for (Eigen::Index k = dk; k < dk2; ++k) u2(i * dk2 + k, i * dk2 + k) = 1.0;
  }

  double fresh = mp.meter().values().back() + 1.0;
  std::vector<SpectralComponent> meter_components;
  for (const auto& c : mp.meter().spectrum()) {
    CMatrix padded = CMatrix::Zero(dk2, dk2);
    padded.topLeftCorner(dk, dk) = c.projection.matrix();
    meter_components.push_back({c.value, Projection::from_matrix(padded)});
  }
  std::map<double, double> f_entries = sp.f().entries();
  std::map<double, double> g_entries = sp.g().entries();
  const double f_default = f_entries.begin()->second;
  const double g_default = g_entries.begin()->second;
  for (Eigen::Index k = dk; k < dk2; ++k, fresh += 1.0) {
    CMatrix axis = CMatrix::Zero(dk2, dk2);
    axis(k, k) = 1.0;
    meter_components.push_back({fresh, Projection::from_matrix(axis)});
    // The padded directions are unreachable from the probe state; the maps
    // only need to be total.
    f_entries[fresh] = f_default;
    g_entries[fresh] = g_default;
  }

  CVector xi2 = CVector::Zero(dk2);
  xi2.head(dk) = mp.probe_state().vector();
  MeasuringProcess padded(
      dk2, PureState(std::move(xi2)), std::move(u2),
      Observable::from_components(std::move(meter_components)),
      mp.id() + "_padded");
  return SimultaneousProcess(std::move(padded), OutcomeMap(std::move(f_entries)),
                             OutcomeMap(std::move(g_entries)));
}

Dim2Report dim2_characterization(const Observable& a, const Observable& b,
                                 const PureState& psi) {
  if (a.dim() != 2 || b.dim() != 2 || psi.dim() != 2) {
    throw WrongDimension("dim2_characterization: requires dim 2");
  }
  Dim2Report report;

  const QuasiDistribution weak = weak_jqpd(a, b, psi);
  report.weak_nonneg = true;
  for (const auto& [key, v] : weak.entries()) {
    if (v.real() < -1e-9 || std::abs(v.imag()) > 1e-9) {
      report.weak_nonneg = false;
    }
  }

  report.commute_or_eigen = commute_in_state(a, b, psi).consensus ||
                            eigenstate_value(a, psi).has_value() ||
                            eigenstate_value(b, psi).has_value();
  // Constructive: the commuting and eigenstate cases both carry explicit
  // witness measurements, so simultaneity is decided by them in dim 2.
  report.simul = report.commute_or_eigen;
  report.consistent = report.simul == report.weak_nonneg &&
                      report.simul == report.commute_or_eigen;
  return report;
}

namespace {

/// Layout of the real variable vector used by the feasibility search: one
/// block of d*d reals for the real part and one for the imaginary part of
/// each candidate element, indexed by outcome pair (x, y).
struct VariableLayout {
  Eigen::Index na, nb, d;
  Eigen::Index block() const { return d * d; }
  Eigen::Index vars() const { return na * nb * 2 * block(); }
  Eigen::Index index(Eigen::Index x, Eigen::Index y, Eigen::Index i,
                     Eigen::Index j, int imag_part) const {
    return ((x * nb + y) * 2 + imag_part) * block() + i * d + j;
  }
};

std::vector<CMatrix> unpack(const Eigen::VectorXd& v,
                            const VariableLayout& lay) {
  std::vector<CMatrix> out;
  out.reserve(lay.na * lay.nb);
  for (Eigen::Index x = 0; x < lay.na; ++x) {
    for (Eigen::Index y = 0; y < lay.nb; ++y) {
      CMatrix m(lay.d, lay.d);
      for (Eigen::Index i = 0; i < lay.d; ++i) {
        for (Eigen::Index j = 0; j < lay.d; ++j) {
          m(i, j) = Complex(v(lay.index(x, y, i, j, 0)),
                            v(lay.index(x, y, i, j, 1)));
        }
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

void pack(const std::vector<CMatrix>& mats, const VariableLayout& lay,
          Eigen::VectorXd& v) {
  for (Eigen::Index x = 0; x < lay.na; ++x) {
    for (Eigen::Index y = 0; y < lay.nb; ++y) {
      const CMatrix& m = mats[x * lay.nb + y];
      for (Eigen::Index i = 0; i < lay.d; ++i) {
        for (Eigen::Index j = 0; j < lay.d; ++j) {
          v(lay.index(x, y, i, j, 0)) = m(i, j).real();
          v(lay.index(x, y, i, j, 1)) = m(i, j).imag();
        }
      }
    }
  }
}

}  // namespace

std::optional<Povm> feasibility_search(const Observable& a,
                                       const Observable& b,
                                       const PureState& psi, int iters,
                                       std::uint64_t seed) {
  if (a.dim() != b.dim() || a.dim() != psi.dim()) {
    throw DimensionMismatch("feasibility_search: dimension mismatch");
  }
  const Eigen::Index d = a.dim();
  const Eigen::Index na = static_cast<Eigen::Index>(a.spectrum().size());
  const Eigen::Index nb = static_cast<Eigen::Index>(b.spectrum().size());
  const VariableLayout lay{na, nb, d};

  const CMatrix va = cyclic_subspace({a}, psi).basis_matrix(d);
  const CMatrix vb = cyclic_subspace({b}, psi).basis_matrix(d);

  // Affine constraints: marginal equations on the cyclic subspaces plus
  // completeness, as one real linear system over the stacked variables.
  const Eigen::Index rows =
      2 * (na * d * va.cols() + nb * d * vb.cols() + d * d);
  Eigen::MatrixXd constraints = Eigen::MatrixXd::Zero(rows, lay.vars());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  Eigen::Index row = 0;
  auto emit = [&](const std::vector<std::pair<Eigen::Index, Eigen::Index>>&
                      selection,
                  const CMatrix& w, const CMatrix& target) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) {
        for (const auto& [x, y] : selection) {
          for (Eigen::Index j = 0; j < d; ++j) {
            const Complex wc = w(j, c);
            constraints(row, lay.index(x, y, i, j, 0)) += wc.real();
            constraints(row, lay.index(x, y, i, j, 1)) -= wc.imag();
            constraints(row + 1, lay.index(x, y, i, j, 0)) += wc.imag();
            constraints(row + 1, lay.index(x, y, i, j, 1)) += wc.real();
          }
        }
        rhs(row) = target(i, c).real();
        rhs(row + 1) = target(i, c).imag();
        row += 2;
      }
    }
  };
  for (Eigen::Index x = 0; x < na; ++x) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> sel;
    for (Eigen::Index y = 0; y < nb; ++y) sel.emplace_back(x, y);
    emit(sel, va, a.spectrum()[x].projection.matrix() * va);
  }
  for (Eigen::Index y = 0; y < nb; ++y) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> sel;
    for (Eigen::Index x = 0; x < na; ++x) sel.emplace_back(x, y);
    emit(sel, vb, b.spectrum()[y].projection.matrix() * vb);
  }
  {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> all;
    for (Eigen::Index x = 0; x < na; ++x)
      for (Eigen::Index y = 0; y < nb; ++y) all.emplace_back(x, y);
    emit(all, CMatrix::Identity(d, d), CMatrix::Identity(d, d));
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver(
      constraints);

  // Start from the symmetrized products; they are exact for globally
  // commuting pairs.
  std::vector<CMatrix> elements;
  for (Eigen::Index x = 0; x < na; ++x) {
    for (Eigen::Index y = 0; y < nb; ++y) {
      const CMatrix& ea = a.spectrum()[x].projection.matrix();
      const CMatrix& eb = b.spectrum()[y].projection.matrix();
      elements.push_back((ea * eb + eb * ea) / 2.0);
    }
  }

  Rng rng(seed);
  Eigen::VectorXd v(lay.vars());
  auto residuals_ok = [&](const std::vector<CMatrix>& mats, double eps) {
    CMatrix total = CMatrix::Zero(d, d);
    for (const CMatrix& m : mats) total += m;
    if (max_abs(total - CMatrix::Identity(d, d)) > eps) return false;
    for (Eigen::Index x = 0; x < na; ++x) {
      CMatrix sum = CMatrix::Zero(d, d);
      for (Eigen::Index y = 0; y < nb; ++y) sum += mats[x * nb + y];
      if (max_abs((sum - a.spectrum()[x].projection.matrix()) * va) > eps)
        return false;
    }
    for (Eigen::Index y = 0; y < nb; ++y) {
      CMatrix sum = CMatrix::Zero(d, d);
      for (Eigen::Index x = 0; x < na; ++x) sum += mats[x * nb + y];
      if (max_abs((sum - b.spectrum()[y].projection.matrix()) * vb) > eps)
        return false;
    }
    for (const CMatrix& m : mats) {
      const auto [vals, vecs] = eigh(m, 1e-6);
      if (vals.size() > 0 && vals(0) < -eps) return false;
    }
    return true;
  };

  for (int sweep = 0; sweep < iters; ++sweep) {
    pack(elements, lay, v);
    v -= solver.solve(constraints * v - rhs);
    elements = unpack(v, lay);
    for (CMatrix& m : elements) m = ((m + m.adjoint().eval()) / 2.0).eval();
    if (residuals_ok(elements, 1e-7)) {
      std::vector<std::pair<double, double>> outcomes;
      for (Eigen::Index x = 0; x < na; ++x) {
        for (Eigen::Index y = 0; y < nb; ++y) {
          outcomes.emplace_back(a.spectrum()[x].value,
                                b.spectrum()[y].value);
        }
      }
      Povm witness =
          Povm::two_dim(std::move(outcomes), elements, 1e-7, 1e-7);
      if (check_povm_marginals(witness, a, b, psi, MarginalMode::Simul, 1e-7)
              .pass) {
        return witness;
      }
    }
    // Project onto the positive cone.
    for (CMatrix& m : elements) {
      const auto [vals, vecs] = eigh(m, 1e-6);
      m = vecs * vals.cwiseMax(0.0).cast<Complex>().asDiagonal() *
          vecs.adjoint();
    }
    // Gentle seeded nudge to escape tangential stalls.
    if (sweep > 0 && sweep % 2000 == 0) {
      for (CMatrix& m : elements) {
        m += 0.02 * random_hermitian(rng, d);
        const auto [vals, vecs] = eigh(m, 1e-6);
        m = vecs * vals.cwiseMax(0.0).cast<Complex>().asDiagonal() *
            vecs.adjoint();
      }
    }
  }
  return std::nullopt;
}

}  // namespace qsimul
