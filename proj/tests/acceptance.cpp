// Acceptance suite: end-to-end checks of the theory-level guarantees, one
// printed pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <vector>

#include "qsimul/scenario.hpp"
#include "qsimul/serialize.hpp"
#include "qsimul/sweeps.hpp"

using namespace qsimul;

namespace {

constexpr std::uint64_t kSeed = 7;

Json load_fixture(const char* name) {
  std::ifstream in(std::string(QSIMUL_TEST_DATA_DIR) + "/" + name);
  if (!in) throw Error(std::string("missing fixture ") + name);
  return Json::parse(in);
}

double max_residual(const std::map<std::string, double>& residuals) {
  double worst = 0;
  for (const auto& [label, r] : residuals) worst = std::max(worst, r);
  return worst;
}

// Perfectly correlated triple: shared eigenvectors with shared values on the
// support of psi, independent elsewhere.
struct Triple {
  Observable a, b, c;
  PureState psi;
};

Triple make_correlated_triple(Rng& rng, Eigen::Index dim) {
  const CMatrix basis = random_unitary(rng, dim);
  const Eigen::Index k =
      dim == 2 ? 2 : 2 + static_cast<Eigen::Index>(rng() % (dim - 1));
  const Eigen::Index rest = dim - k;
  const std::vector<double> common = random_separated_values(
      rng, static_cast<int>(k + 3 * std::max<Eigen::Index>(rest, 0)));

  auto build = [&](int which) {
    std::vector<SpectralComponent> lines;
    std::map<double, CMatrix> merged;
    for (Eigen::Index i = 0; i < k; ++i) {
      merged.try_emplace(common[i],
                         basis.col(i) * basis.col(i).adjoint());
    }
    if (rest > 0) {
      const CMatrix w = basis.rightCols(rest);
      const CMatrix u = random_unitary(rng, rest);
      for (Eigen::Index i = 0; i < rest; ++i) {
        const CVector v = w * u.col(i);
        merged.try_emplace(common[k + which * rest + i], v * v.adjoint());
      }
    }
    for (auto& [value, m] : merged) {
      lines.push_back({value, Projection::from_matrix(m)});
    }
    return Observable::from_components(std::move(lines));
  };
  const Observable a = build(0);
  const Observable b = build(1);
  const Observable c = build(2);

  CVector coeffs = random_gaussian(rng, k, 1).col(0);
  CVector psi = CVector::Zero(dim);
  for (Eigen::Index i = 0; i < k; ++i) psi += coeffs(i) * basis.col(i);
  return Triple{a, b, c, PureState::normalized(psi)};
}

struct Criterion {
  int number;
  const char* label;
  std::function<bool(std::string&)> check;
};

// --- criterion bodies -------------------------------------------------------

bool gudder_equivalence(std::string& detail) {
  const SweepResult result =
      sweep_gudder(1000, {2, 3, 4, 5, 6, 7, 8}, kSeed);
  detail = "violations " + std::to_string(result.violations) +
           ", worst constructed-case residual " +
           format_double(result.worst_residual);
  return result.violations == 0 && result.worst_residual <= 1e-8;
}

bool strong_weak_coincidence(std::string& detail) {
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(kSeed + 1, i));
    const Eigen::Index dim = 2 + i % 7;
    const StatePair instance = [&]() {
      switch (i % 4) {
        case 0:
          return make_commute_in_state_instance(rng, dim);
        case 1:
          return make_global_commuting_instance(rng, dim);
        default:
          return make_generic_instance(rng, dim);
      }
    }();
    const bool commuting =
        commute_in_state(instance.a, instance.b, instance.psi).consensus;
    const QuasiDistribution strong =
        strong_jqpd(instance.a, instance.b, instance.psi);
    const QuasiDistribution weak =
        weak_jqpd(instance.a, instance.b, instance.psi);
    double gap = 0;
    for (const auto& [key, value] : weak.entries()) {
      gap = std::max(gap,
                     std::abs(value - strong.entry(key.first, key.second)));
    }
    if (commuting != (gap <= 1e-7)) ++mismatches;
  }
  detail = "mismatches " + std::to_string(mismatches) + " / 1000";
  return mismatches == 0;
}

bool steinberg_identity(std::string& detail) {
  double worst = 0;
  int checked = 0;
  for (int i = 0; checked < 500; ++i) {
    Rng rng(derive_seed(kSeed + 2, i));
    const Eigen::Index dim = 2 + i % 7;
    const Observable a = random_observable(rng, dim);
    const Observable b = random_observable_with_values(
        rng, dim, random_separated_values(rng, static_cast<int>(dim)));
    const PureState psi = random_state(rng, dim);
    const OutcomeDistribution born = born_distribution(b, psi);
    for (double value : b.values()) {
      if (born.probability(value) > 1e-3) {
        worst = std::max(worst, steinberg_check(a, b, psi, value));
        ++checked;
        break;
      }
    }
  }
  detail = "worst residual " + format_double(worst) + " over 500 instances";
  return worst <= 1e-9;
}

bool tenway_agreement(std::string& detail) {
  const SweepResult result = sweep_idc(1000, {2, 3, 4, 5, 6, 7, 8}, kSeed + 3);
  detail = "violations " + std::to_string(result.violations) +
           ", worst positive-case residual " +
           format_double(result.worst_residual);
  return result.violations == 0 && result.worst_residual <= 1e-8;
}

bool transitivity(std::string& detail) {
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(derive_seed(kSeed + 4, i));
    const Triple t = make_correlated_triple(rng, 2 + i % 7);
    if (!transitivity_check(t.a, t.b, t.c, t.psi)) ++failures;
  }

  const Json fixture = load_fixture("commute_not_transitive.json");
  const Observable a = observable_from_json(fixture["a"]);
  const Observable b = observable_from_json(fixture["b"]);
  const Observable c = observable_from_json(fixture["c"]);
  const PureState psi = state_from_json(fixture["psi"]);
  const bool counterexample_holds =
      commute_in_state(a, b, psi).consensus &&
      commute_in_state(b, c, psi).consensus &&
      !commute_in_state(a, c, psi).consensus;

  detail = "failures " + std::to_string(failures) +
           " / 200, commute-intransitivity witness " +
           (counterexample_holds ? "holds" : "broken");
  return failures == 0 && counterexample_holds;
}

bool universal_uncertainty(std::string& detail) {
  const SweepResult result = sweep_uup(2000, {2, 3, 4}, kSeed + 5);

  const Json fixture = load_fixture("hup_violation.json");
  const Observable a = observable_from_json(fixture["a"]);
  const Observable b = observable_from_json(fixture["b"]);
  const PureState psi = state_from_json(fixture["psi"]);
  const SimultaneousProcess process =
      simultaneous_process_from_json(fixture["process"]);
  const UncertaintyReport report =
      uncertainty_report(rms_errors(process, a, b, psi));
  const bool fixture_ok = report.uup_holds && !report.hup_holds &&
                          report.rhs - report.hup_lhs >= 0.05;

  detail = "violations " + std::to_string(result.violations) +
           " / 2000, stored product-form violation margin " +
           format_double(report.rhs - report.hup_lhs);
  return result.violations == 0 && fixture_ok;
}

bool eigenstate_measurement(std::string& detail) {
  int failures = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(derive_seed(kSeed + 6, i));
    const Eigen::Index dim = 2 + i % 5;
    const Observable a = random_observable(rng, dim);
    const Observable b = random_observable(rng, dim);
    const auto& component = a.spectrum()[rng() % a.spectrum().size()];
    const PureState psi =
        PureState::normalized(component.projection.range_basis().col(0));
    const SimultaneousProcess sp = construct_eigenstate_measurement(a, b, psi);
    if (!verify_simultaneous(sp, a, b, psi).is_simultaneous) ++failures;
  }

  const SimultaneousProcess heisenberg = construct_eigenstate_measurement(
      pauli_z(), pauli_x(), PureState::basis_state(2, 0));
  const JointOutputDistribution joint =
      joint_output(heisenberg, PureState::basis_state(2, 0));
  const bool outputs_ok =
      std::abs(joint.probability(1.0, 1.0) - 0.5) <= 1e-9 &&
      std::abs(joint.probability(1.0, -1.0) - 0.5) <= 1e-9 &&
      joint.probability(-1.0, 1.0) <= 1e-9 &&
      joint.probability(-1.0, -1.0) <= 1e-9;

  detail = "failures " + std::to_string(failures) +
           " / 200, canonical joint output " + (outputs_ok ? "exact" : "off");
  return failures == 0 && outputs_ok;
}

bool joint_output_uniqueness(std::string& detail) {
  double worst_weak_gap = 0;
  double worst_witness_gap = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(kSeed + 7, i));
    const Eigen::Index dim = 2 + i % 4;

    Observable a = random_observable(rng, dim);
    Observable b = random_observable(rng, dim);
    PureState psi = random_state(rng, dim);
    SimultaneousProcess first = [&]() {
      if (i % 2 == 0) {
        const auto& component = a.spectrum()[rng() % a.spectrum().size()];
        psi = PureState::normalized(component.projection.range_basis().col(0));
        return construct_eigenstate_measurement(a, b, psi);
      }
      const StatePair instance = make_commute_in_state_instance(rng, dim);
      a = instance.a;
      b = instance.b;
      psi = instance.psi;
      return construct_commuting_measurement(a, b, psi);
    }();

    worst_weak_gap =
        std::max(worst_weak_gap, joint_output_equals_weak(first, a, b, psi));

    // Structurally different witness: same readings through a larger probe.
    const SimultaneousProcess second = pad_probe(first, 1 + i % 2);
    const JointOutputDistribution j1 = joint_output(first, psi);
    const JointOutputDistribution j2 = joint_output(second, psi);
    for (const auto& [key, p] : j1.entries) {
      worst_witness_gap = std::max(
          worst_witness_gap,
          std::abs(p - j2.probability(key.first, key.second)));
    }
  }
  detail = "worst joint-vs-weak gap " + format_double(worst_weak_gap) +
           ", worst witness-vs-witness gap " +
           format_double(worst_witness_gap);
  return worst_weak_gap <= 1e-8 && worst_witness_gap <= 1e-8;
}

bool dim2_equivalence(std::string& detail) {
  const SweepResult result = sweep_dim2(5000, {2}, kSeed + 8);
  detail = "inconsistencies " + std::to_string(result.violations) + " / 5000";
  return result.violations == 0;
}

bool marginal_checker_and_search(std::string& detail) {
  // Product witness for a commuting pair.
  Rng rng(derive_seed(kSeed + 9, 0));
  const StatePair commuting = make_global_commuting_instance(rng, 3);
  std::vector<std::pair<double, double>> outcomes;
  std::vector<CMatrix> elements;
  for (const auto& ca : commuting.a.spectrum()) {
    for (const auto& cb : commuting.b.spectrum()) {
      outcomes.emplace_back(ca.value, cb.value);
      elements.push_back(ca.projection.matrix() * cb.projection.matrix());
    }
  }
  const bool product_ok =
      check_povm_marginals(Povm::two_dim(outcomes, elements), commuting.a,
                           commuting.b, commuting.psi, MarginalMode::Simul)
          .pass;

  // Delta witness in an eigenstate.
  const Observable z = pauli_z();
  const Observable x = pauli_x();
  const PureState ket0 = PureState::basis_state(2, 0);
  outcomes.clear();
  elements.clear();
  for (const auto& ca : z.spectrum()) {
    for (const auto& cb : x.spectrum()) {
      outcomes.emplace_back(ca.value, cb.value);
      elements.push_back(std::abs(ca.value - 1.0) < 1e-12
                             ? cb.projection.matrix()
                             : CMatrix::Zero(2, 2));
    }
  }
  const bool delta_ok =
      check_povm_marginals(Povm::two_dim(outcomes, elements), z, x, ket0,
                           MarginalMode::Simul)
          .pass;

  // 100 random POVMs against nowhere commuting pairs must be rejected with a
  // clear margin.
  int rejected = 0;
  for (int i = 0; i < 100; ++i) {
    Rng r(derive_seed(kSeed + 9, 100 + i));
    std::vector<CMatrix> raw;
    CMatrix total = CMatrix::Zero(2, 2);
    for (int k = 0; k < 4; ++k) {
      const CMatrix g = random_gaussian(r, 2, 2);
      raw.push_back(g * g.adjoint());
      total += raw.back();
    }
    const auto [vals, vecs] = eigh(total);
    const CMatrix scale = vecs *
                          vals.cwiseMax(1e-12).cwiseSqrt().cwiseInverse()
                              .cast<Complex>().asDiagonal() *
                          vecs.adjoint();
    std::vector<std::pair<double, double>> labels;
    std::vector<CMatrix> mats;
    int k = 0;
    for (const auto& ca : z.spectrum()) {
      for (const auto& cb : x.spectrum()) {
        labels.emplace_back(ca.value, cb.value);
        mats.push_back(scale * raw[k++] * scale);
      }
    }
    const MarginalCheck check =
        check_povm_marginals(Povm::two_dim(labels, mats), z, x,
                             random_state(r, 2), MarginalMode::Simul);
    if (!check.pass &&
        std::max(check.max_row_residual, check.max_col_residual) > 1e-4) {
      ++rejected;
    }
  }

  // Search recovery within the iteration budget, twice with the same seed.
  const auto commuting_witness = feasibility_search(
      commuting.a, commuting.b, commuting.psi, 10000, kSeed + 9);
  const auto eigen_first = feasibility_search(z, x, ket0, 10000, kSeed + 9);
  const auto eigen_second = feasibility_search(z, x, ket0, 10000, kSeed + 9);
  bool search_ok = commuting_witness.has_value() && eigen_first.has_value() &&
                   eigen_second.has_value();
  if (search_ok) {
    search_ok =
        check_povm_marginals(*commuting_witness, commuting.a, commuting.b,
                             commuting.psi, MarginalMode::Simul, 1e-7)
            .pass &&
        check_povm_marginals(*eigen_first, z, x, ket0, MarginalMode::Simul,
                             1e-7)
            .pass;
    for (std::size_t i = 0; search_ok && i < eigen_first->size(); ++i) {
      search_ok = max_abs(eigen_first->elements()[i] -
                          eigen_second->elements()[i]) == 0.0;
    }
  }

  detail = std::string("product witness ") + (product_ok ? "ok" : "FAIL") +
           ", delta witness " + (delta_ok ? "ok" : "FAIL") + ", rejected " +
           std::to_string(rejected) + " / 100, search " +
           (search_ok ? "deterministic hits" : "FAIL");
  return product_ok && delta_ok && rejected == 100 && search_ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Gudder equivalence across regimes (1000 instances)",
       gudder_equivalence},
      {2, "strong/weak coincidence iff commutation (1000 instances)",
       strong_weak_coincidence},
      {3, "weak value equals weak conditional quasiexpectation (500)",
       steinberg_identity},
      {4, "ten-way identical-correlation agreement (500 + 500)",
       tenway_agreement},
      {5, "identical correlation is transitive; commutation is not",
       transitivity},
      {6, "universal uncertainty relation (2000 processes) + stored "
          "product-form violation",
       universal_uncertainty},
      {7, "eigenstate simultaneous measurements verify (200 triples)",
       eigenstate_measurement},
      {8, "joint outputs equal the weak distribution and are "
          "process-independent",
       joint_output_uniqueness},
      {9, "dim-2 characterization consistent (5000 sweeps)", dim2_equivalence},
      {10, "marginal checker accepts witnesses, rejects impostors; search "
           "recovers witnesses",
       marginal_checker_and_search},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL",
                criterion.number, criterion.label, detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
