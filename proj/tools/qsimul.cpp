// Command-line front end: scenario runner and randomized property sweeps.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qsimul/scenario.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QSIMUL_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  std::stringstream stream(spec);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) dims.push_back(std::stoi(item));
  }
  return dims;
}

void print_run_table(const qsimul::RunReport& report) {
  std::cout << "scenario: " << report.scenario << "  seed: " << report.seed
            << '\n';
  for (const auto& task : report.tasks) {
    std::cout << "  [" << (task.pass ? "PASS" : "FAIL") << "] task "
              << task.index << "  " << task.op;
    if (!task.residuals.empty()) {
      double worst = 0;
      for (const auto& [label, value] : task.residuals) {
        worst = std::max(worst, value);
      }
      std::cout << "  (worst residual " << std::scientific
                << std::setprecision(2) << worst << ")"
                << std::defaultfloat;
    }
    std::cout << '\n';
  }
  std::cout << (report.pass ? "PASS" : "FAIL") << " (" << report.tasks.size()
            << " tasks)\n";
}

void print_run_csv(const qsimul::RunReport& report) {
  std::cout << "index,op,pass\n";
  for (const auto& task : report.tasks) {
    std::cout << task.index << ',' << task.op << ','
              << (task.pass ? 1 : 0) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsimul: state-dependent quantum measurement toolkit"};
  app.require_subcommand(1);

  std::string format = "table";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  // run
  auto* run = app.add_subcommand("run", "Execute a scenario file");
  std::string scenario_path;
  std::uint64_t seed = default_seed();
  std::string out_dir;
  run->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Seed (falls back to QSIMUL_SEED, then 0)");
  run->add_option("--out", out_dir, "Directory for reports and CSV outputs");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a randomized property suite");
  std::string kind;
  int count = 100;
  std::string dims_spec = "2,3";
  std::uint64_t sweep_seed = default_seed();
  std::string sweep_out;
  sweep->add_option("--kind", kind, "Suite: uup, dim2, gudder, idc")
      ->required()
      ->check(CLI::IsMember({"uup", "dim2", "gudder", "idc"}));
  sweep->add_option("--count", count, "Number of instances")->required();
  sweep->add_option("--dims", dims_spec, "Comma-separated dimensions");
  sweep->add_option("--seed", sweep_seed, "Seed");
  sweep->add_option("--out", sweep_out, "Directory for the JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::optional<std::filesystem::path> out;
      if (!out_dir.empty()) out = out_dir;
      const qsimul::RunReport report =
          qsimul::run_scenario(scenario_path, seed, out);
      if (format == "json") {
        std::cout << report.to_json().dump(2) << '\n';
      } else if (format == "csv") {
        print_run_csv(report);
      } else {
        print_run_table(report);
      }
      return report.pass ? 0 : 1;
    }

    const qsimul::SweepResult result =
        qsimul::run_sweep(kind, count, parse_dims(dims_spec), sweep_seed);
    const qsimul::Json j = qsimul::to_json(result);
    if (!sweep_out.empty()) {
      std::filesystem::create_directories(sweep_out);
      std::ofstream file(std::filesystem::path(sweep_out) / "sweep.json");
      file << j.dump(2) << '\n';
    }
    if (format == "json") {
      std::cout << j.dump(2) << '\n';
    } else if (format == "csv") {
      std::cout << "kind,count,violations,worst_residual\n"
                << result.kind << ',' << result.count << ','
                << result.violations << ','
                << qsimul::format_double(result.worst_residual) << '\n';
    } else {
      std::cout << "sweep " << result.kind << ": " << result.count
                << " instances, " << result.violations << " violations, worst residual "
                << std::scientific << std::setprecision(3)
                << result.worst_residual << '\n';
    }
    return result.violations == 0 ? 0 : 1;
  } catch (const qsimul::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
