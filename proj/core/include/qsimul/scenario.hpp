#pragma once

#include <filesystem>
#include <optional>

#include "qsimul/serialize.hpp"

namespace qsimul {

/// One executed scenario task. wall_ms is the only nondeterministic field.
struct TaskReport {
  int index = 0;
  std::string op;
  Json inputs;
  Json outputs;
  std::map<std::string, double> residuals;
  bool pass = true;
  double wall_ms = 0;
};

struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  bool pass = true;
  std::vector<TaskReport> tasks;

  Json to_json() const;
};

/// Parses and executes a scenario file: declared objects are materialized,
/// tasks run in order (later tasks may use objects bound by earlier ones),
/// CSV/JSON side outputs land under out_dir. Parse, binding and dimension
/// errors throw; contracted-verdict failures are recorded in the report.
RunReport run_scenario(const std::filesystem::path& scenario_file,
                       std::uint64_t seed,
                       const std::optional<std::filesystem::path>& out_dir);

/// Same, from an already parsed document (used by tests).
RunReport run_scenario_json(const Json& document, const std::string& name,
                            std::uint64_t seed,
                            const std::optional<std::filesystem::path>& out_dir);

}  // namespace qsimul
