#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include "qsimul/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "qsimul/random.hpp"
#include "testing.hpp"

using namespace qsimul;
using namespace qsimul::testing;

namespace {

std::filesystem::path scenario_path(const char* name) {
  return std::filesystem::path(QSIMUL_SCENARIO_DIR) / name;
}

Json strip_wall_times(Json report) {
  for (auto& task : report["tasks"]) task.erase("wall_ms");
  return report;
}

std::filesystem::path fresh_dir(const char* tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   (std::string("qsimul_test_") + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("bundled heisenberg scenario passes with the expected joint output") {
  const auto out = fresh_dir("heisenberg");
  const RunReport report = run_scenario(scenario_path("heisenberg_case.json"),
                                        7, out);
  CHECK(report.pass);
  REQUIRE(report.tasks.size() == 4);
  for (const auto& task : report.tasks) CHECK(task.pass);
  CHECK(std::filesystem::exists(out / "joint_output.csv"));
  CHECK(std::filesystem::exists(out / "report.json"));

  std::ifstream csv(out / "joint_output.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "a,b,re,im");
}

TEST_CASE("bundled EPR scenario reports perfect correlation") {
  const RunReport report =
      run_scenario(scenario_path("epr_correlation.json"), 7, std::nullopt);
  CHECK(report.pass);
  REQUIRE(report.tasks.size() == 3);
}

TEST_CASE("empty task list gives an empty passing report") {
  const Json doc = Json::parse(R"json({"schema": 1, "objects": {}, "tasks": []})json");
  const RunReport report = run_scenario_json(doc, "empty", 0, std::nullopt);
  CHECK(report.pass);
  CHECK(report.tasks.empty());
}

TEST_CASE("scenario parsing is strict") {
  CHECK_THROWS_AS(run_scenario_json(Json::parse(R"json({"schema": 2})json"), "bad", 0,
                                    std::nullopt),
                  ParseError);
  CHECK_THROWS_AS(
      run_scenario_json(Json::parse(R"json({"schema": 1, "extra": 3})json"), "bad", 0,
                        std::nullopt),
      ParseError);
  CHECK_THROWS_AS(
      run_scenario_json(
          Json::parse(
              R"json({"schema": 1, "tasks": [{"op": "std_dev", "junk": 1}]})json"),
          "bad", 0, std::nullopt),
      ParseError);
}

TEST_CASE("unknown operations and bindings are rejected") {
  CHECK_THROWS_AS(
      run_scenario_json(
          Json::parse(R"json({"schema": 1, "tasks": [{"op": "frobnicate"}]})json"),
          "bad", 0, std::nullopt),
      UnknownOperation);
  CHECK_THROWS_AS(
      run_scenario_json(
          Json::parse(
              R"json({"schema": 1,
                  "tasks": [{"op": "std_dev",
                             "args": {"a": "missing", "psi": "missing"}}]})json"),
          "bad", 0, std::nullopt),
      BindingError);
}

TEST_CASE("dimension mismatches carry the task index") {
  const Json doc = Json::parse(R"json({
    "schema": 1,
    "objects": {"A": "pauli_z", "psi": {"state": [[1,0],[0,0],[0,0]]}},
    "tasks": [{"op": "std_dev", "args": {"a": "A", "psi": "psi"}}]
  })json");
  try {
    run_scenario_json(doc, "bad", 0, std::nullopt);
    FAIL("expected DimensionMismatch");
  } catch (const DimensionMismatch& e) {
    CHECK(std::string(e.what()).find("task 0") != std::string::npos);
  }
}

TEST_CASE("reports are deterministic up to wall time") {
  const auto once =
      run_scenario(scenario_path("heisenberg_case.json"), 42, std::nullopt);
  const auto twice =
      run_scenario(scenario_path("heisenberg_case.json"), 42, std::nullopt);
  CHECK(strip_wall_times(once.to_json()).dump() ==
        strip_wall_times(twice.to_json()).dump());
}

TEST_CASE("failed expectations make the scenario fail") {
  const Json doc = Json::parse(R"json({
    "schema": 1,
    "objects": {"A": "pauli_z", "psi": {"state": [[1,0],[0,0]]}},
    "tasks": [{"op": "std_dev", "args": {"a": "A", "psi": "psi"},
               "expect": {"/value": 0.25}}]
  })json");
  const RunReport report = run_scenario_json(doc, "expect", 0, std::nullopt);
  CHECK(!report.pass);
  CHECK(!report.tasks[0].pass);
}

TEST_CASE("presets: identity, von_neumann and trivial") {
  const Json doc = Json::parse(R"json({
    "schema": 1,
    "objects": {
      "A": "identity(3)",
      "B": "pauli_y",
      "vn": "von_neumann(B)",
      "flat": "trivial(2, 3)",
      "psi": {"state": [[1,0],[0,0]]}
    },
    "tasks": [
      {"op": "output_distribution", "args": {"process": "vn", "psi": "psi"}},
      {"op": "extract_povm", "args": {"process": "flat"}, "bind": "P"}
    ]
  })json");
  const RunReport report = run_scenario_json(doc, "presets", 0, std::nullopt);
  CHECK(report.pass);
  CHECK(report.tasks[0].outputs["distribution"].size() == 2);
}

TEST_CASE("attach_maps builds a simultaneous process inside a scenario") {
  const Json doc = Json::parse(R"json({
    "schema": 1,
    "objects": {
      "A": "pauli_z",
      "B": "pauli_x",
      "vn": "von_neumann(B)",
      "psi": {"state": [[1,0],[0,0]]}
    },
    "tasks": [
      {"op": "attach_maps",
       "args": {"process": "vn", "f_map": ["constant", 1.0],
                "g_map": "identity"},
       "bind": "sp"},
      {"op": "verify_simultaneous",
       "args": {"process": "sp", "a": "A", "b": "B", "psi": "psi"},
       "expect": {"/is_simultaneous": true}}
    ]
  })json");
  CHECK(run_scenario_json(doc, "attach", 0, std::nullopt).pass);
}

TEST_CASE("serialization round-trips are bit-exact") {
  Rng rng(9);
  SUBCASE("matrices") {
    const CMatrix m = random_gaussian(rng, 3, 4);
    const CMatrix back = matrix_from_json(to_json(m));
    CHECK(back.rows() == 3);
    // Bit-exact: serialized doubles parse back to the same values.
    CHECK((back.array() == m.array()).all());
    CHECK(to_json(back).dump() == to_json(m).dump());
  }
  SUBCASE("states") {
    const PureState psi = random_state(rng, 5);
    const PureState back = state_from_json(to_json(psi));
    CHECK((back.vector().array() == psi.vector().array()).all());
  }
  SUBCASE("observables, including the spectral form") {
    const Observable a = random_observable(rng, 3);
    const Observable back = observable_from_json(to_json(a));
    CHECK(matrices_close(back.matrix(), a.matrix(), 1e-12));

    Json spectral;
    spectral["eigenvalues"] = Json::array();
    spectral["projections"] = Json::array();
    for (const auto& c : a.spectrum()) {
      spectral["eigenvalues"].push_back(c.value);
      spectral["projections"].push_back(to_json(c.projection.matrix()));
    }
    const Observable from_spectral = observable_from_json(spectral);
    CHECK(matrices_close(from_spectral.matrix(), a.matrix(), 1e-9));
  }
  SUBCASE("processes with outcome maps") {
    MeasuringProcess base = von_neumann_model(pauli_z());
    const std::vector<double> values = base.meter().values();
    const SimultaneousProcess sp(base, OutcomeMap::identity_on(values),
                                 OutcomeMap::constant_on(values, 2.0));
    const SimultaneousProcess back =
        simultaneous_process_from_json(to_json(sp));
    CHECK((back.base().unitary().array() == sp.base().unitary().array()).all());
    CHECK(back.g().entries() == sp.g().entries());
    CHECK(to_json(back).dump() == to_json(sp).dump());
  }
  SUBCASE("povms") {
    const Povm povm = extract_povm(von_neumann_model(pauli_z()));
    const Povm back = povm_from_json(to_json(povm));
    CHECK(back.size() == povm.size());
    for (std::size_t i = 0; i < povm.size(); ++i) {
      CHECK((back.elements()[i].array() == povm.elements()[i].array()).all());
    }
  }
}

TEST_CASE("csv formatting uses 17 significant digits") {
  const std::string s = format_double(1.0 / 3.0);
  CHECK(s == "0.33333333333333331");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("quasidistribution csv export") {
  const QuasiDistribution q = weak_jqpd(pauli_z(), pauli_x(), ket0());
  const std::string csv = to_csv(q);
  CHECK(csv.rfind("a,b,re,im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
