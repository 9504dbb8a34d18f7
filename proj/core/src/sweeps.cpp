#include "qsimul/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <thread>

namespace qsimul {

namespace {

struct InstanceOutcome {
  bool violated = false;
  double residual = 0;
};

/// Runs fn over [0, count) on a handful of worker chunks; results land in a
/// vector indexed by instance, so the reduction is independent of thread
/// scheduling.
std::vector<InstanceOutcome> run_instances(
    int count, const std::function<InstanceOutcome(int)>& fn) {
  std::vector<InstanceOutcome> results(count);
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
  std::vector<std::future<void>> futures;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        results[i] = fn(i);
      }
    }));
  }
  for (auto& f : futures) f.get();
  return results;
}

SweepResult reduce(std::string kind, int count, std::vector<int> dims,
                   std::uint64_t seed,
                   const std::vector<InstanceOutcome>& outcomes) {
  SweepResult result;
  result.kind = std::move(kind);
  result.count = count;
  result.dims = std::move(dims);
  result.seed = seed;
  for (const auto& o : outcomes) {
    if (o.violated) ++result.violations;
    result.worst_residual = std::max(result.worst_residual, o.residual);
  }
  return result;
}

void check_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw InvalidValue("sweep: dims must be nonempty");
  for (int d : dims) {
    if (d < 2 || d > 16) throw InvalidValue("sweep: dims must lie in [2,16]");
  }
}

double max_residual(const std::map<std::string, double>& residuals) {
  double worst = 0;
  for (const auto& [label, r] : residuals) worst = std::max(worst, r);
  return worst;
}

std::vector<double> shuffled_values(Rng& rng, int count) {
  std::vector<double> values = random_separated_values(rng, count);
  std::shuffle(values.begin(), values.end(), rng);
  return values;
}

Observable assemble(const std::vector<std::pair<double, CMatrix>>& lines) {
  std::vector<SpectralComponent> components;
  std::map<double, CMatrix> merged;
  for (const auto& [value, matrix] : lines) {
    auto [it, fresh] = merged.try_emplace(value, matrix);
    if (!fresh) it->second += matrix;
  }
  for (auto& [value, matrix] : merged) {
    components.push_back({value, Projection::from_matrix(matrix)});
  }
  return Observable::from_components(std::move(components));
}

}  // namespace

StatePair make_commute_in_state_instance(Rng& rng, Eigen::Index dim) {
  const CMatrix basis = random_unitary(rng, dim);
  const Eigen::Index k =
      dim == 2 ? 2
               : 2 + static_cast<Eigen::Index>(rng() % (dim - 2 + 1));
  const Eigen::Index rest = dim - k;

  // The first k basis columns are shared eigenvectors with independent
  // eigenvalues for A and B; the complements carry independent eigenbases.
  std::vector<double> a_values = shuffled_values(rng, static_cast<int>(dim));
  std::vector<double> b_values = shuffled_values(rng, static_cast<int>(dim));

  std::vector<std::pair<double, CMatrix>> a_lines;
  std::vector<std::pair<double, CMatrix>> b_lines;
  for (Eigen::Index i = 0; i < k; ++i) {
    const CMatrix line = basis.col(i) * basis.col(i).adjoint();
    a_lines.emplace_back(a_values[i], line);
    b_lines.emplace_back(b_values[i], line);
  }
  if (rest > 0) {
    const CMatrix w = basis.rightCols(rest);
    const CMatrix ua = random_unitary(rng, rest);
    const CMatrix ub = random_unitary(rng, rest);
    for (Eigen::Index i = 0; i < rest; ++i) {
      const CVector av = w * ua.col(i);
      const CVector bv = w * ub.col(i);
      a_lines.emplace_back(a_values[k + i], av * av.adjoint());
      b_lines.emplace_back(b_values[k + i], bv * bv.adjoint());
    }
  }

  CVector coeffs = random_gaussian(rng, k, 1).col(0);
  CVector psi = CVector::Zero(dim);
  for (Eigen::Index i = 0; i < k; ++i) psi += coeffs(i) * basis.col(i);
  return StatePair{assemble(a_lines), assemble(b_lines),
                   PureState::normalized(psi)};
}

StatePair make_global_commuting_instance(Rng& rng, Eigen::Index dim) {
  const CMatrix basis = random_unitary(rng, dim);
  std::vector<double> a_values = shuffled_values(rng, static_cast<int>(dim));
  std::vector<double> b_values = shuffled_values(rng, static_cast<int>(dim));
  // Occasionally force a degenerate pair of axes.
  if (dim > 2 && rng() % 3 == 0) {
    a_values[1] = a_values[0];
    b_values[dim - 1] = b_values[dim - 2];
  }
  std::vector<std::pair<double, CMatrix>> a_lines;
  std::vector<std::pair<double, CMatrix>> b_lines;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const CMatrix line = basis.col(i) * basis.col(i).adjoint();
    a_lines.emplace_back(a_values[i], line);
    b_lines.emplace_back(b_values[i], line);
  }
  return StatePair{assemble(a_lines), assemble(b_lines),
                   random_state(rng, dim)};
}

StatePair make_block_commuting_instance(Rng& rng, Eigen::Index block_dim,
                                        Eigen::Index other_dim) {
  const Eigen::Index dim = block_dim + other_dim;
  const CMatrix basis = random_unitary(rng, dim);
  std::vector<double> a_values =
      shuffled_values(rng, static_cast<int>(dim));
  std::vector<double> b_values =
      shuffled_values(rng, static_cast<int>(dim));

  std::vector<std::pair<double, CMatrix>> a_lines;
  std::vector<std::pair<double, CMatrix>> b_lines;
  // Shared eigenbasis on the first block.
  for (Eigen::Index i = 0; i < block_dim; ++i) {
    const CMatrix line = basis.col(i) * basis.col(i).adjoint();
    a_lines.emplace_back(a_values[i], line);
    b_lines.emplace_back(b_values[i], line);
  }
  // Independent eigenbases on the complement.
  if (other_dim > 0) {
    const CMatrix w = basis.rightCols(other_dim);
    const CMatrix ua = random_unitary(rng, other_dim);
    const CMatrix ub = random_unitary(rng, other_dim);
    for (Eigen::Index i = 0; i < other_dim; ++i) {
      const CVector av = w * ua.col(i);
      const CVector bv = w * ub.col(i);
      a_lines.emplace_back(a_values[block_dim + i], av * av.adjoint());
      b_lines.emplace_back(b_values[block_dim + i], bv * bv.adjoint());
    }
  }
  CVector coeffs = random_gaussian(rng, block_dim, 1).col(0);
  CVector psi = CVector::Zero(dim);
  for (Eigen::Index i = 0; i < block_dim; ++i) {
    psi += coeffs(i) * basis.col(i);
  }
  return StatePair{assemble(a_lines), assemble(b_lines),
                   PureState::normalized(psi)};
}

StatePair make_generic_instance(Rng& rng, Eigen::Index dim) {
  return StatePair{random_observable(rng, dim), random_observable(rng, dim),
                   random_state(rng, dim)};
}

StatePair make_perfectly_correlated_instance(Rng& rng, Eigen::Index dim) {
  const CMatrix basis = random_unitary(rng, dim);
  const Eigen::Index k =
      dim == 2 ? 2
               : 2 + static_cast<Eigen::Index>(rng() % (dim - 2 + 1));
  const Eigen::Index rest = dim - k;
  std::vector<double> values =
      shuffled_values(rng, static_cast<int>(k + 2 * rest));
  // Occasionally give two shared eigenvectors the same common value.
  if (k > 2 && rng() % 4 == 0) values[1] = values[0];

  std::vector<std::pair<double, CMatrix>> a_lines;
  std::vector<std::pair<double, CMatrix>> b_lines;
  for (Eigen::Index i = 0; i < k; ++i) {
    const CMatrix line = basis.col(i) * basis.col(i).adjoint();
    a_lines.emplace_back(values[i], line);
    b_lines.emplace_back(values[i], line);
  }
  if (rest > 0) {
    const CMatrix w = basis.rightCols(rest);
    const CMatrix ua = random_unitary(rng, rest);
    const CMatrix ub = random_unitary(rng, rest);
    for (Eigen::Index i = 0; i < rest; ++i) {
      const CVector av = w * ua.col(i);
      const CVector bv = w * ub.col(i);
      a_lines.emplace_back(values[k + i], av * av.adjoint());
      b_lines.emplace_back(values[k + rest + i], bv * bv.adjoint());
    }
  }
  CVector coeffs = random_gaussian(rng, k, 1).col(0);
  CVector psi = CVector::Zero(dim);
  for (Eigen::Index i = 0; i < k; ++i) psi += coeffs(i) * basis.col(i);
  return StatePair{assemble(a_lines), assemble(b_lines),
                   PureState::normalized(psi)};
}

UupInstance make_uup_instance(Rng& rng, Eigen::Index system_dim,
                              Eigen::Index probe_dim) {
  Observable a = random_observable(rng, system_dim);
  Observable b = random_observable(rng, system_dim);
  PureState psi = random_state(rng, system_dim);

  Observable meter = random_observable_with_values(
      rng, probe_dim, random_separated_values(rng, static_cast<int>(probe_dim)));
  MeasuringProcess base(probe_dim, random_state(rng, probe_dim),
                        random_unitary(rng, system_dim * probe_dim),
                        std::move(meter), "uup_instance");

  // Random post-processing into a small grid of readings; collisions merge
  // meter outcomes.
  const std::vector<double> grid = {-1.0, -0.5, 0.0, 0.5, 1.0};
  std::map<double, double> f_entries;
  std::map<double, double> g_entries;
  for (double v : base.meter().values()) {
    f_entries[v] = grid[rng() % grid.size()];
    g_entries[v] = grid[rng() % grid.size()];
  }
  SimultaneousProcess process(std::move(base), OutcomeMap(std::move(f_entries)),
                              OutcomeMap(std::move(g_entries)));
  return UupInstance{std::move(a), std::move(b), std::move(psi),
                     std::move(process)};
}

SweepResult sweep_uup(int count, const std::vector<int>& dims,
                      std::uint64_t seed) {
  check_dims(dims);
  auto outcomes = run_instances(count, [&](int i) {
    Rng rng(derive_seed(seed, i));
    const Eigen::Index dh = dims[i % dims.size()];
    const Eigen::Index dk = 2 + i % 3;
    const UupInstance instance = make_uup_instance(rng, dh, dk);
    const ErrorBudget budget =
        rms_errors(instance.process, instance.a, instance.b, instance.psi);
    const UncertaintyReport report = uncertainty_report(budget);
    return InstanceOutcome{!report.uup_holds, report.rhs - report.uup_lhs};
  });
  return reduce("uup", count, dims, seed, outcomes);
}

SweepResult sweep_gudder(int count, const std::vector<int>& dims,
                         std::uint64_t seed) {
  check_dims(dims);
  auto outcomes = run_instances(count, [&](int i) {
    Rng rng(derive_seed(seed, i));
    const Eigen::Index dim = dims[i % dims.size()];
    StatePair instance = [&]() {
      switch (i % 3) {
        case 0:
          return make_global_commuting_instance(rng, dim);
        case 1:
          return dim >= 3 ? make_block_commuting_instance(rng, dim / 2,
                                                          dim - dim / 2)
                          : make_commute_in_state_instance(rng, dim);
        default:
          return make_generic_instance(rng, dim);
      }
    }();
    const bool constructed_positive = i % 3 != 2;
    const CommutativityReport report =
        commute_in_state(instance.a, instance.b, instance.psi);
    InstanceOutcome outcome;
    outcome.violated =
        report.inconsistent || (constructed_positive && !report.consensus);
    if (constructed_positive) outcome.residual = max_residual(report.residuals);
    return outcome;
  });
  return reduce("gudder", count, dims, seed, outcomes);
}

SweepResult sweep_idc(int count, const std::vector<int>& dims,
                      std::uint64_t seed) {
  check_dims(dims);
  const bool has_dim4 =
      std::find(dims.begin(), dims.end(), 4) != dims.end();
  auto outcomes = run_instances(count, [&](int i) {
    Rng rng(derive_seed(seed, i));
    const Eigen::Index dim = dims[i % dims.size()];
    const bool positive = i % 2 == 0;
    StatePair instance = [&]() -> StatePair {
      if (i == 0 && has_dim4) {
        // EPR analogue: Z (x) I and I (x) Z in a maximally entangled state.
        const CMatrix z = pauli_z().matrix();
        const CMatrix id = CMatrix::Identity(2, 2);
        CVector bell = CVector::Zero(4);
        bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
        return StatePair{spectralize(tensor(z, id)), spectralize(tensor(id, z)),
                         PureState(bell)};
      }
      if (positive) return make_perfectly_correlated_instance(rng, dim);
      if (i % 4 == 1) return make_global_commuting_instance(rng, dim);
      return make_generic_instance(rng, dim);
    }();
    const CorrelationReport report =
        perfectly_correlated(instance.a, instance.b, instance.psi);
    InstanceOutcome outcome;
    outcome.violated = report.inconsistent ||
                       (positive && !report.consensus) ||
                       (!positive && report.consensus);
    if (positive) outcome.residual = max_residual(report.residuals);
    return outcome;
  });
  return reduce("idc", count, dims, seed, outcomes);
}

SweepResult sweep_dim2(int count, const std::vector<int>& dims,
                       std::uint64_t seed) {
  for (int d : dims) {
    if (d != 2) throw InvalidValue("sweep dim2: dims must be {2}");
  }
  auto outcomes = run_instances(count, [&](int i) {
    Rng rng(derive_seed(seed, i));
    Observable a = random_observable(rng, 2);
    Observable b = random_observable(rng, 2);
    PureState psi = random_state(rng, 2);
    switch (i % 10) {
      case 7: {  // eigenstate of A
        const auto& c = a.spectrum()[rng() % a.spectrum().size()];
        psi = PureState::normalized(c.projection.range_basis().col(0));
        break;
      }
      case 8: {  // commuting pair
        StatePair pair = make_global_commuting_instance(rng, 2);
        a = pair.a;
        b = pair.b;
        psi = pair.psi;
        break;
      }
      case 9: {  // eigenstate of B
        const auto& c = b.spectrum()[rng() % b.spectrum().size()];
        psi = PureState::normalized(c.projection.range_basis().col(0));
        break;
      }
      default:
        break;
    }
    const Dim2Report report = dim2_characterization(a, b, psi);
    return InstanceOutcome{!report.consistent, 0.0};
  });
  return reduce("dim2", count, dims, seed, outcomes);
}

SweepResult run_sweep(const std::string& kind, int count,
                      const std::vector<int>& dims, std::uint64_t seed) {
  if (count < 1) throw InvalidValue("sweep: count must be at least 1");
  if (kind == "uup") return sweep_uup(count, dims, seed);
  if (kind == "gudder") return sweep_gudder(count, dims, seed);
  if (kind == "idc") return sweep_idc(count, dims, seed);
  if (kind == "dim2") return sweep_dim2(count, dims, seed);
  throw InvalidValue("sweep: unknown kind " + kind);
}

}  // namespace qsimul
