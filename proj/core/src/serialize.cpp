#include "qsimul/serialize.hpp"

#include <cstdio>
#include <regex>
#include <sstream>

namespace qsimul {

namespace {

const char* simul_method_name(SimulMethod m) {
  switch (m) {
    case SimulMethod::CommutingCase:
      return "commuting_case";
    case SimulMethod::EigenstateCase:
      return "eigenstate_case";
    case SimulMethod::Dim2Case:
      return "dim2_case";
    case SimulMethod::FeasibilitySearch:
      return "feasibility_search";
    case SimulMethod::Undecided:
      return "undecided";
  }
  return "undecided";
}

Json entries_row_major(const CMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
  }
  return entries;
}

Complex complex_from(const Json& pair) {
  if (!pair.is_array() || pair.size() != 2) {
    throw ParseError("expected an [re, im] pair");
  }
  return Complex(pair[0].get<double>(), pair[1].get<double>());
}

template <typename R>
Json report_common(const R& r) {
  Json j;
  j["verdicts"] = Json::object();
  for (const auto& [label, verdict] : r.verdicts) j["verdicts"][label] = verdict;
  j["residuals"] = Json::object();
  for (const auto& [label, value] : r.residuals) j["residuals"][label] = value;
  j["consensus"] = r.consensus;
  j["inconsistent"] = r.inconsistent;
  return j;
}

}  // namespace

std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

Json to_json(const CMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = entries_row_major(m);
  return j;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries")) {
    throw ParseError("matrix: expected {rows, cols, entries}");
  }
  const Eigen::Index rows = j["rows"].get<Eigen::Index>();
  const Eigen::Index cols = j["cols"].get<Eigen::Index>();
  const Json& entries = j["entries"];
  if (rows <= 0 || cols <= 0 ||
      entries.size() != static_cast<std::size_t>(rows * cols)) {
    throw ParseError("matrix: entry count does not match rows * cols");
  }
  CMatrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index jj = 0; jj < cols; ++jj) {
      m(i, jj) = complex_from(entries[k++]);
    }
  }
  return m;
}

Json to_json(const CVector& v) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    entries.push_back(Json::array({v(i).real(), v(i).imag()}));
  }
  return entries;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("vector: expected a nonempty array of [re, im] pairs");
  }
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from(j[i]);
  return v;
}

Json to_json(const PureState& psi) { return to_json(psi.vector()); }

PureState state_from_json(const Json& j) {
  return PureState(vector_from_json(j));
}

Json to_json(const Observable& a) {
  Json j;
  j["matrix"] = to_json(a.matrix());
  return j;
}

Observable observable_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "pauli_x") return pauli_x();
    if (name == "pauli_y") return pauli_y();
    if (name == "pauli_z") return pauli_z();
    std::smatch match;
    if (std::regex_match(name, match, std::regex(R"(identity\((\d+)\))"))) {
      return identity_observable(std::stol(match[1]));
    }
    throw ParseError("observable: unknown preset '" + name + "'");
  }
  if (j.is_object() && j.contains("matrix")) {
    return spectralize(matrix_from_json(j["matrix"]));
  }
  if (j.is_object() && j.contains("eigenvalues") && j.contains("projections")) {
    const Json& values = j["eigenvalues"];
    const Json& projections = j["projections"];
    if (values.size() != projections.size()) {
      throw ParseError("observable: eigenvalues/projections size mismatch");
    }
    std::vector<SpectralComponent> components;
    for (std::size_t i = 0; i < values.size(); ++i) {
      components.push_back(
          {values[i].get<double>(),
           Projection::from_matrix(matrix_from_json(projections[i]))});
    }
    return Observable::from_components(std::move(components));
  }
  throw ParseError("observable: expected a preset, matrix, or spectral form");
}

Json to_json(const QuasiDistribution& q) {
  Json j = Json::array();
  for (const auto& [key, value] : q.entries()) {
    Json entry;
    entry["a"] = key.first;
    entry["b"] = key.second;
    entry["re"] = value.real();
    entry["im"] = value.imag();
    j.push_back(std::move(entry));
  }
  return j;
}

std::string to_csv(const QuasiDistribution& q) {
  std::ostringstream out;
  out << "a,b,re,im\n";
  for (const auto& [key, value] : q.entries()) {
    out << format_double(key.first) << ',' << format_double(key.second) << ','
        << format_double(value.real()) << ',' << format_double(value.imag())
        << '\n';
  }
  return out.str();
}

Json to_json(const OutcomeDistribution& d) {
  Json j = Json::array();
  for (const auto& [x, p] : d.entries()) {
    Json entry;
    entry["x"] = x;
    entry["p"] = p;
    j.push_back(std::move(entry));
  }
  return j;
}

Json to_json(const JointOutputDistribution& d) {
  Json j;
  j["source"] = d.source_id;
  j["entries"] = Json::array();
  for (const auto& [key, p] : d.entries) {
    Json entry;
    entry["x"] = key.first;
    entry["y"] = key.second;
    entry["p"] = p;
    j["entries"].push_back(std::move(entry));
  }
  return j;
}

std::string to_csv(const JointOutputDistribution& d) {
  std::ostringstream out;
  out << "a,b,re,im\n";
  for (const auto& [key, p] : d.entries) {
    out << format_double(key.first) << ',' << format_double(key.second) << ','
        << format_double(p) << ',' << format_double(0.0) << '\n';
  }
  return out.str();
}

Json to_json(const MeasuringProcess& mp) {
  Json j;
  j["probe_dim"] = mp.probe_dim();
  j["probe_state"] = to_json(mp.probe_state());
  j["unitary"] = to_json(mp.unitary());
  j["meter"] = to_json(mp.meter());
  if (!mp.id().empty()) j["id"] = mp.id();
  return j;
}

namespace {

Json map_to_json(const OutcomeMap& map) {
  Json j = Json::array();
  for (const auto& [in, out] : map.entries()) {
    j.push_back(Json::array({in, out}));
  }
  return j;
}

OutcomeMap map_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("outcome map: expected [[in, out], ...]");
  std::map<double, double> entries;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw ParseError("outcome map: expected [in, out] pairs");
    }
    entries[pair[0].get<double>()] = pair[1].get<double>();
  }
  return OutcomeMap(std::move(entries));
}

MeasuringProcess base_process_from_json(const Json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key != "probe_dim" && key != "probe_state" && key != "unitary" &&
        key != "meter" && key != "f_map" && key != "g_map" && key != "id") {
      throw ParseError("process: unknown field '" + key + "'");
    }
  }
  return MeasuringProcess(j.at("probe_dim").get<Eigen::Index>(),
                          state_from_json(j.at("probe_state")),
                          matrix_from_json(j.at("unitary")),
                          observable_from_json(j.at("meter")),
                          j.value("id", std::string{}));
}

}  // namespace

MeasuringProcess process_from_json(const Json& j) {
  return base_process_from_json(j);
}

Json to_json(const SimultaneousProcess& sp) {
  Json j = to_json(sp.base());
  j["f_map"] = map_to_json(sp.f());
  j["g_map"] = map_to_json(sp.g());
  return j;
}

SimultaneousProcess simultaneous_process_from_json(const Json& j) {
  if (!j.contains("f_map") || !j.contains("g_map")) {
    throw ParseError("simultaneous process: f_map and g_map are required");
  }
  return SimultaneousProcess(base_process_from_json(j),
                             map_from_json(j["f_map"]),
                             map_from_json(j["g_map"]));
}

Json to_json(const Povm& p) {
  Json j;
  j["arity"] = p.arity();
  j["outcomes"] = Json::array();
  for (const auto& [x, y] : p.outcomes()) {
    if (p.arity() == 1) {
      j["outcomes"].push_back(Json::array({x}));
    } else {
      j["outcomes"].push_back(Json::array({x, y}));
    }
  }
  j["elements"] = Json::array();
  for (const auto& e : p.elements()) j["elements"].push_back(to_json(e));
  return j;
}

Povm povm_from_json(const Json& j) {
  if (!j.contains("outcomes") || !j.contains("elements")) {
    throw ParseError("povm: expected {outcomes, elements}");
  }
  const Json& outcomes = j["outcomes"];
  const Json& elements = j["elements"];
  if (outcomes.empty() || outcomes.size() != elements.size()) {
    throw ParseError("povm: outcomes and elements must pair up");
  }
  std::vector<CMatrix> mats;
  for (const auto& e : elements) mats.push_back(matrix_from_json(e));
  const std::size_t arity = outcomes[0].size();
  if (arity == 1) {
    std::vector<double> labels;
    for (const auto& o : outcomes) labels.push_back(o[0].get<double>());
    return Povm::one_dim(std::move(labels), std::move(mats));
  }
  if (arity == 2) {
    std::vector<std::pair<double, double>> labels;
    for (const auto& o : outcomes) {
      labels.emplace_back(o[0].get<double>(), o[1].get<double>());
    }
    return Povm::two_dim(std::move(labels), std::move(mats));
  }
  throw ParseError("povm: outcome arity must be 1 or 2");
}

Json to_json(const Subspace& s) {
  Json j;
  j["dim"] = s.dim();
  j["basis"] = Json::array();
  for (const auto& v : s.basis) j["basis"].push_back(to_json(v));
  return j;
}

Json to_json(const CommutativityReport& r) { return report_common(r); }

Json to_json(const CorrelationReport& r) {
  Json j = report_common(r);
  j["skipped"] = r.skipped;
  return j;
}

Json to_json(const SimultaneityReport& r) {
  Json j;
  j["is_simultaneous"] = r.is_simultaneous;
  j["method"] = simul_method_name(r.method);
  j["residuals"] = Json::object();
  for (const auto& [label, value] : r.residuals) j["residuals"][label] = value;
  j["a_side"] = to_json(r.a_side);
  j["b_side"] = to_json(r.b_side);
  return j;
}

Json to_json(const MarginalCheck& r) {
  Json j;
  j["max_row_residual"] = r.max_row_residual;
  j["max_col_residual"] = r.max_col_residual;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const ErrorBudget& b) {
  Json j;
  j["eps_a"] = b.eps_a;
  j["eps_b"] = b.eps_b;
  j["sigma_a"] = b.sigma_a;
  j["sigma_b"] = b.sigma_b;
  j["commutator_bound"] = b.commutator_bound;
  return j;
}

Json to_json(const UncertaintyReport& r) {
  Json j;
  j["uup_lhs"] = r.uup_lhs;
  j["uup_holds"] = r.uup_holds;
  j["hup_lhs"] = r.hup_lhs;
  j["hup_holds"] = r.hup_holds;
  j["rhs"] = r.rhs;
  return j;
}

Json to_json(const Dim2Report& r) {
  Json j;
  j["simul"] = r.simul;
  j["weak_nonneg"] = r.weak_nonneg;
  j["commute_or_eigen"] = r.commute_or_eigen;
  j["consistent"] = r.consistent;
  return j;
}

Json to_json(const SweepResult& r) {
  Json j;
  j["kind"] = r.kind;
  j["count"] = r.count;
  j["dims"] = r.dims;
  j["seed"] = r.seed;
  j["violations"] = r.violations;
  j["worst_residual"] = r.worst_residual;
  return j;
}

Json to_json(const WeakValue& w) {
  Json j;
  j["re"] = w.value.real();
  j["im"] = w.value.imag();
  return j;
}

}  // namespace qsimul
