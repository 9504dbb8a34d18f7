#include "qsimul/measproc.hpp"

#include <algorithm>
#include <cmath>

namespace qsimul {

OutcomeMap OutcomeMap::identity_on(const std::vector<double>& outcomes) {
  std::map<double, double> entries;
  for (double x : outcomes) entries[x] = x;
  return OutcomeMap(std::move(entries));
}

OutcomeMap OutcomeMap::constant_on(const std::vector<double>& outcomes,
                                   double value) {
  std::map<double, double> entries;
  for (double x : outcomes) entries[x] = value;
  return OutcomeMap(std::move(entries));
}

double OutcomeMap::at(double outcome) const {
  double best_gap = tol::outcome_match;
  const double* found = nullptr;
  for (const auto& [key, value] : entries_) {
    const double gap = std::abs(key - outcome);
    if (gap <= best_gap) {
      best_gap = gap;
      found = &value;
    }
  }
  if (!found) {
    throw UnmappedOutcome("OutcomeMap: no entry for outcome " +
                          std::to_string(outcome));
  }
  return *found;
}

bool OutcomeMap::covers(double outcome) const {
  for (const auto& [key, value] : entries_) {
    if (std::abs(key - outcome) <= tol::outcome_match) return true;
  }
  return false;
}

MeasuringProcess::MeasuringProcess(Eigen::Index probe_dim,
                                   PureState probe_state, CMatrix unitary,
                                   Observable meter, std::string id)
    : probe_dim_(probe_dim),
      probe_state_(std::move(probe_state)),
      unitary_(std::move(unitary)),
      meter_(std::move(meter)),
      id_(std::move(id)) {
  if (probe_dim_ <= 0 || probe_state_.dim() != probe_dim_ ||
      meter_.dim() != probe_dim_) {
    throw DimensionMismatch("MeasuringProcess: probe dimensions disagree");
  }
  if (unitary_.rows() != unitary_.cols() ||
      unitary_.rows() % probe_dim_ != 0 || unitary_.rows() < probe_dim_) {
    throw DimensionMismatch(
        "MeasuringProcess: unitary does not act on H (x) K");
  }
  const CMatrix gram = unitary_.adjoint() * unitary_;
  if (max_abs(gram - CMatrix::Identity(gram.rows(), gram.cols())) >
      tol::unitarity) {
    throw InvalidValue("MeasuringProcess: interaction is not unitary");
  }
}

SimultaneousProcess::SimultaneousProcess(MeasuringProcess base, OutcomeMap f,
                                         OutcomeMap g)
    : base_(std::move(base)), f_(std::move(f)), g_(std::move(g)) {
  for (const auto& c : base_.meter().spectrum()) {
    if (!f_.covers(c.value) || !g_.covers(c.value)) {
      throw UnmappedOutcome(
          "SimultaneousProcess: outcome maps must cover every meter value");
    }
  }
}

Povm Povm::validated(int arity,
                     std::vector<std::pair<double, double>> outcomes,
                     std::vector<CMatrix> elements, double positivity_tol,
                     double completeness_tol) {
  if (outcomes.size() != elements.size() || elements.empty()) {
    throw InvalidValue("Povm: outcomes and elements must pair up");
  }
  const Eigen::Index d = elements.front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (auto& e : elements) {
    if (e.rows() != d || e.cols() != d) {
      throw DimensionMismatch("Povm: element dimensions differ");
    }
    e = ((e + e.adjoint().eval()) / 2.0).eval();
    const auto [vals, vecs] = eigh(e, 1e-7);
    if (vals.size() > 0 && vals(0) < -positivity_tol) {
      throw InvalidValue("Povm: element is not positive semidefinite");
    }
    total += e;
  }
  if (max_abs(total - CMatrix::Identity(d, d)) > completeness_tol) {
    throw InvalidValue("Povm: elements do not sum to the identity");
  }
  struct Pack {
    std::pair<double, double> outcome;
    CMatrix element;
  };
  std::vector<Pack> packs;
  packs.reserve(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    packs.push_back({outcomes[i], std::move(elements[i])});
  }
  std::sort(packs.begin(), packs.end(), [](const Pack& a, const Pack& b) {
    return a.outcome < b.outcome;
  });
  std::vector<std::pair<double, double>> sorted_outcomes;
  std::vector<CMatrix> sorted_elements;
  for (auto& p : packs) {
    sorted_outcomes.push_back(p.outcome);
    sorted_elements.push_back(std::move(p.element));
  }
  return Povm(arity, std::move(sorted_outcomes), std::move(sorted_elements));
}

Povm Povm::one_dim(std::vector<double> outcomes, std::vector<CMatrix> elements,
                   double positivity_tol, double completeness_tol) {
  std::vector<std::pair<double, double>> labels;
  labels.reserve(outcomes.size());
  for (double x : outcomes) labels.emplace_back(x, 0.0);
  return validated(1, std::move(labels), std::move(elements), positivity_tol,
                   completeness_tol);
}

Povm Povm::two_dim(std::vector<std::pair<double, double>> outcomes,
                   std::vector<CMatrix> elements, double positivity_tol,
                   double completeness_tol) {
  return validated(2, std::move(outcomes), std::move(elements), positivity_tol,
                   completeness_tol);
}

Observable heisenberg_meter(const MeasuringProcess& mp) {
  const Eigen::Index dh = mp.system_dim();
  const CMatrix extended =
      tensor(CMatrix::Identity(dh, dh), mp.meter().matrix());
  return spectralize(mp.unitary().adjoint() * extended * mp.unitary());
}

namespace {

/// Meter label for a spectral value of M(dt). Unitary conjugation preserves
/// the spectrum, so every value must match one of the meter's.
double meter_label(const Observable& meter, double heisenberg_value) {
  if (auto i = meter.value_index(heisenberg_value)) {
    return meter.spectrum()[*i].value;
  }
  throw Error("heisenberg meter value does not match any meter outcome");
}

}  // namespace

Povm extract_povm(const MeasuringProcess& mp) {
  const Eigen::Index dh = mp.system_dim();
  const Eigen::Index dk = mp.probe_dim();
  const Observable mt = heisenberg_meter(mp);
  const CVector& xi = mp.probe_state().vector();
  const CMatrix probe_window =
      tensor(CMatrix::Identity(dh, dh), (xi * xi.adjoint()).eval());

  std::map<double, CMatrix> by_label;
  for (const auto& c : mt.spectrum()) {
    const double label = meter_label(mp.meter(), c.value);
    CMatrix element =
        partial_trace_probe(c.projection.matrix() * probe_window, dh, dk);
    element = ((element + element.adjoint().eval()) / 2.0).eval();
    auto [it, fresh] = by_label.try_emplace(label, std::move(element));
    if (!fresh) it->second += element;
  }
  // Meter values that never appear in the Heisenberg spectrum (possible only
  // through clustering) carry zero elements.
  for (const auto& c : mp.meter().spectrum()) {
    by_label.try_emplace(c.value, CMatrix::Zero(dh, dh));
  }
  std::vector<double> outcomes;
  std::vector<CMatrix> elements;
  for (auto& [label, element] : by_label) {
    outcomes.push_back(label);
    elements.push_back(std::move(element));
  }
  return Povm::one_dim(std::move(outcomes), std::move(elements));
}

Observable mapped_heisenberg_meter(const MeasuringProcess& mp,
                                   const OutcomeMap& map) {
  const Observable mt = heisenberg_meter(mp);
  std::vector<std::pair<double, CMatrix>> groups;
  for (const auto& c : mt.spectrum()) {
    const double mapped = map.at(meter_label(mp.meter(), c.value));
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return std::abs(g.first - mapped) <= tol::outcome_match;
    });
    if (it == groups.end()) {
      groups.emplace_back(mapped, c.projection.matrix());
    } else {
      it->second += c.projection.matrix();
    }
  }
  std::vector<SpectralComponent> components;
  components.reserve(groups.size());
  for (auto& [value, matrix] : groups) {
    components.push_back({value, Projection::from_matrix(std::move(matrix))});
  }
  return Observable::from_components(std::move(components));
}

Observable extend_by_probe(const Observable& a, Eigen::Index probe_dim) {
  const CMatrix id = CMatrix::Identity(probe_dim, probe_dim);
  std::vector<SpectralComponent> components;
  components.reserve(a.spectrum().size());
  for (const auto& c : a.spectrum()) {
    components.push_back(
        {c.value, Projection::from_matrix(tensor(c.projection.matrix(), id))});
  }
  return Observable::from_components(std::move(components));
}

OutcomeDistribution output_distribution(const MeasuringProcess& mp,
                                        const PureState& psi,
                                        double* cross_residual) {
  if (psi.dim() != mp.system_dim()) {
    throw DimensionMismatch("output_distribution: state dimension mismatch");
  }
  const Observable mt = heisenberg_meter(mp);
  const PureState composite = tensor(psi, mp.probe_state());

  std::map<double, double> born;
  for (const auto& c : mt.spectrum()) {
    born[meter_label(mp.meter(), c.value)] +=
        expectation(c.projection.matrix(), composite).real();
  }
  for (const auto& c : mp.meter().spectrum()) born.try_emplace(c.value, 0.0);

  const Povm povm = extract_povm(mp);
  double worst = 0;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const double via_povm = expectation(povm.elements()[i], psi).real();
    worst = std::max(worst,
                     std::abs(via_povm - born.at(povm.outcomes()[i].first)));
  }
  if (cross_residual) *cross_residual = worst;
  if (worst > 1e-9) {
    throw Error("output_distribution: Born and POVM routes disagree");
  }
  return OutcomeDistribution::from_raw(std::move(born));
}

CMatrix noise_operator(const SimultaneousProcess& sp, const Observable& target,
                       NoiseSide side) {
  const MeasuringProcess& mp = sp.base();
  if (target.dim() != mp.system_dim()) {
    throw DimensionMismatch("noise_operator: target dimension mismatch");
  }
  const Observable mt = heisenberg_meter(mp);
  const OutcomeMap& map = side == NoiseSide::A ? sp.f() : sp.g();
  const Eigen::Index d = mt.dim();
  CMatrix mapped = CMatrix::Zero(d, d);
  for (const auto& c : mt.spectrum()) {
    mapped += map.at(meter_label(mp.meter(), c.value)) * c.projection.matrix();
  }
  const Eigen::Index dk = mp.probe_dim();
  return mapped - tensor(target.matrix(), CMatrix::Identity(dk, dk));
}

ErrorBudget rms_errors(const SimultaneousProcess& sp, const Observable& a,
                       const Observable& b, const PureState& psi) {
  const MeasuringProcess& mp = sp.base();
  if (a.dim() != b.dim() || a.dim() != psi.dim() ||
      a.dim() != mp.system_dim()) {
    throw DimensionMismatch("rms_errors: dimension mismatch");
  }
  const CVector composite = tensor(psi.vector(), mp.probe_state().vector());
  ErrorBudget budget;
  budget.eps_a = (noise_operator(sp, a, NoiseSide::A) * composite).norm();
  budget.eps_b = (noise_operator(sp, b, NoiseSide::B) * composite).norm();
  budget.sigma_a = std_dev(a, psi);
  budget.sigma_b = std_dev(b, psi);
  const CMatrix commutator =
      a.matrix() * b.matrix() - b.matrix() * a.matrix();
  budget.commutator_bound = 0.5 * std::abs(expectation(commutator, psi));
  return budget;
}

UncertaintyReport uncertainty_report(const ErrorBudget& budget) {
  UncertaintyReport report;
  report.rhs = budget.commutator_bound;
  report.uup_lhs = budget.eps_a * budget.eps_b +
                   budget.eps_a * budget.sigma_b +
                   budget.sigma_a * budget.eps_b;
  report.hup_lhs = budget.eps_a * budget.eps_b;
  report.uup_holds = report.uup_lhs >= report.rhs - 1e-9;
  report.hup_holds = report.hup_lhs >= report.rhs - 1e-9;
  return report;
}

MeasuringProcess von_neumann_model(const Observable& b) {
  const Eigen::Index n = static_cast<Eigen::Index>(b.spectrum().size());
  const Eigen::Index dh = b.dim();

  CMatrix shift = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) shift((k + 1) % n, k) = 1.0;

  CMatrix u = CMatrix::Zero(dh * n, dh * n);
  CMatrix shift_power = CMatrix::Identity(n, n);
  std::vector<SpectralComponent> meter_components;
  for (Eigen::Index j = 0; j < n; ++j) {
    u += tensor(b.spectrum()[j].projection.matrix(), shift_power);
    shift_power = (shift * shift_power).eval();
    CMatrix axis = CMatrix::Zero(n, n);
    axis(j, j) = 1.0;
    meter_components.push_back(
        {b.spectrum()[j].value, Projection::from_matrix(axis)});
  }
  Observable meter = Observable::from_components(std::move(meter_components));
  return MeasuringProcess(n, PureState::basis_state(n, 0), std::move(u),
                          std::move(meter), "von_neumann");
}

MeasuringProcess trivial_process(Eigen::Index system_dim,
                                 Eigen::Index probe_dim) {
  std::vector<SpectralComponent> meter_components;
  for (Eigen::Index j = 0; j < probe_dim; ++j) {
    CMatrix axis = CMatrix::Zero(probe_dim, probe_dim);
    axis(j, j) = 1.0;
    meter_components.push_back(
        {static_cast<double>(j), Projection::from_matrix(axis)});
  }
  return MeasuringProcess(
      probe_dim, PureState::basis_state(probe_dim, 0),
      CMatrix::Identity(system_dim * probe_dim, system_dim * probe_dim),
      Observable::from_components(std::move(meter_components)), "trivial");
}

bool mean_error_probe_independent(const SimultaneousProcess& sp,
                                  const Observable& target, NoiseSide side,
                                  const PureState& psi, double tolerance) {
  const CMatrix noise = noise_operator(sp, target, side);
  const Eigen::Index dk = sp.base().probe_dim();
  const Eigen::Index dh = sp.base().system_dim();
  if (psi.dim() != dh) {
    throw DimensionMismatch("mean_error_probe_independent: state mismatch");
  }
  // Partial mean over the system: T[k,l] = <psi (x) k| N |psi (x) l>.
  CMatrix partial = CMatrix::Zero(dk, dk);
  for (Eigen::Index k = 0; k < dk; ++k) {
    for (Eigen::Index l = 0; l < dk; ++l) {
      Complex s = 0;
      for (Eigen::Index i = 0; i < dh; ++i) {
        for (Eigen::Index j = 0; j < dh; ++j) {
          s += std::conj(psi.vector()(i)) * noise(i * dk + k, j * dk + l) *
               psi.vector()(j);
        }
      }
      partial(k, l) = s;
    }
  }
  const Complex mean = partial.trace() / static_cast<double>(dk);
  return max_abs(partial - mean * CMatrix::Identity(dk, dk)) <= tolerance;
}

}  // namespace qsimul
