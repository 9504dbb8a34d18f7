#include "qsimul/scenario.hpp"

#include <chrono>
#include <fstream>
#include <regex>
#include <variant>

#include "qsimul/random.hpp"

namespace qsimul {

namespace {

using ObjectValue = std::variant<Observable, PureState, MeasuringProcess,
                                 SimultaneousProcess, Povm>;

struct Context {
  std::map<std::string, ObjectValue> objects;
  std::uint64_t seed = 0;
  int task_index = 0;

  const ObjectValue& lookup(const std::string& name) const {
    auto it = objects.find(name);
    if (it == objects.end()) {
      throw BindingError("task " + std::to_string(task_index) +
                         ": unknown object '" + name + "'");
    }
    return it->second;
  }
};

std::string arg_name(const Json& args, const std::string& key) {
  if (!args.contains(key) || !args[key].is_string()) {
    throw BindingError("missing or non-string argument '" + key + "'");
  }
  return args[key].get<std::string>();
}

const Observable& obs_arg(Context& ctx, const Json& args,
                          const std::string& key) {
  const ObjectValue& v = ctx.lookup(arg_name(args, key));
  if (const auto* o = std::get_if<Observable>(&v)) return *o;
  throw BindingError("argument '" + key + "' is not an observable");
}

const PureState& state_arg(Context& ctx, const Json& args,
                           const std::string& key) {
  const ObjectValue& v = ctx.lookup(arg_name(args, key));
  if (const auto* s = std::get_if<PureState>(&v)) return *s;
  throw BindingError("argument '" + key + "' is not a state");
}

const SimultaneousProcess& simproc_arg(Context& ctx, const Json& args,
                                       const std::string& key) {
  const ObjectValue& v = ctx.lookup(arg_name(args, key));
  if (const auto* p = std::get_if<SimultaneousProcess>(&v)) return *p;
  throw BindingError("argument '" + key +
                     "' is not a simultaneous measuring process");
}

/// Accepts either process form; simultaneous processes contribute their base.
const MeasuringProcess& anyproc_arg(Context& ctx, const Json& args,
                                    const std::string& key) {
  const ObjectValue& v = ctx.lookup(arg_name(args, key));
  if (const auto* p = std::get_if<MeasuringProcess>(&v)) return *p;
  if (const auto* sp = std::get_if<SimultaneousProcess>(&v)) {
    return sp->base();
  }
  throw BindingError("argument '" + key + "' is not a measuring process");
}

const Povm& povm_arg(Context& ctx, const Json& args, const std::string& key) {
  const ObjectValue& v = ctx.lookup(arg_name(args, key));
  if (const auto* p = std::get_if<Povm>(&v)) return *p;
  throw BindingError("argument '" + key + "' is not a POVM");
}

double number_arg(const Json& args, const std::string& key) {
  if (!args.contains(key) || !args[key].is_number()) {
    throw BindingError("missing or non-numeric argument '" + key + "'");
  }
  return args[key].get<double>();
}

Flavor flavor_arg(const Json& args) {
  const std::string name = arg_name(args, "flavor");
  if (name == "strong") return Flavor::Strong;
  if (name == "weak") return Flavor::Weak;
  throw BindingError("flavor must be 'strong' or 'weak'");
}

OutcomeMap map_literal(const Json& spec,
                       const std::vector<double>& meter_values) {
  if (spec.is_string() && spec.get<std::string>() == "identity") {
    return OutcomeMap::identity_on(meter_values);
  }
  if (spec.is_array() && spec.size() == 2 && spec[0].is_string() &&
      spec[0].get<std::string>() == "constant") {
    return OutcomeMap::constant_on(meter_values, spec[1].get<double>());
  }
  if (spec.is_array()) {
    std::map<double, double> entries;
    for (const auto& pair : spec) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError("outcome map: expected [in, out] pairs");
      }
      entries[pair[0].get<double>()] = pair[1].get<double>();
    }
    return OutcomeMap(std::move(entries));
  }
  throw ParseError("outcome map: expected 'identity', ['constant', c], or pairs");
}

struct TaskOutcome {
  Json outputs = Json::object();
  std::map<std::string, double> residuals;
  bool pass = true;
  std::optional<ObjectValue> bound;
};

TaskOutcome run_op(Context& ctx, const std::string& op, const Json& args) {
  TaskOutcome out;

  if (op == "born_distribution") {
    out.outputs["distribution"] =
        to_json(born_distribution(obs_arg(ctx, args, "a"),
                                  state_arg(ctx, args, "psi")));
  } else if (op == "std_dev") {
    out.outputs["value"] =
        std_dev(obs_arg(ctx, args, "a"), state_arg(ctx, args, "psi"));
  } else if (op == "commute_in_state") {
    const CommutativityReport report =
        commute_in_state(obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
                         state_arg(ctx, args, "psi"));
    out.outputs = to_json(report);
    out.residuals = report.residuals;
    out.pass = !report.inconsistent;
  } else if (op == "nowhere_commuting") {
    out.outputs["nowhere_commuting"] =
        nowhere_commuting(obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"));
  } else if (op == "cyclic_subspace") {
    std::vector<Observable> ops;
    if (!args.contains("ops") || !args["ops"].is_array()) {
      throw BindingError("cyclic_subspace: 'ops' must list observables");
    }
    for (const auto& name : args["ops"]) {
      const ObjectValue& v = ctx.lookup(name.get<std::string>());
      if (const auto* o = std::get_if<Observable>(&v)) {
        ops.push_back(*o);
      } else {
        throw BindingError("cyclic_subspace: ops entries must be observables");
      }
    }
    out.outputs = to_json(cyclic_subspace(ops, state_arg(ctx, args, "psi")));
  } else if (op == "jpd") {
    out.outputs["distribution"] =
        to_json(jpd(obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
                    state_arg(ctx, args, "psi")));
  } else if (op == "strong_jqpd" || op == "weak_jqpd") {
    const QuasiDistribution q =
        op == "strong_jqpd"
            ? strong_jqpd(obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
                          state_arg(ctx, args, "psi"))
            : weak_jqpd(obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
                        state_arg(ctx, args, "psi"));
    out.outputs["distribution"] = to_json(q);
    const Complex total = q.sum();
    if (q.flavor() == Flavor::Weak) {
      out.residuals["sum_deviation"] = std::abs(total - Complex(1.0));
      out.pass = out.residuals["sum_deviation"] <= 1e-9;
      out.outputs["is_weak_jpd"] = is_weak_jpd(q);
    } else {
      out.outputs["sum"] = total.real();
      out.pass = total.real() <= 1.0 + 1e-9;
    }
  } else if (op == "is_weak_jpd") {
    out.outputs["is_weak_jpd"] = is_weak_jpd(
        weak_jqpd(obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
                  state_arg(ctx, args, "psi")));
  } else if (op == "conditional_qp") {
    const auto cond =
        conditional_qp(obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
                       state_arg(ctx, args, "psi"), number_arg(args, "given_b"),
                       flavor_arg(args));
    Json entries = Json::array();
    Complex total = 0;
    for (const auto& [x, v] : cond) {
      Json e;
      e["a"] = x;
      e["re"] = v.real();
      e["im"] = v.imag();
      entries.push_back(std::move(e));
      total += v;
    }
    out.outputs["distribution"] = std::move(entries);
    if (flavor_arg(args) == Flavor::Weak) {
      out.residuals["sum_deviation"] = std::abs(total - Complex(1.0));
      out.pass = out.residuals["sum_deviation"] <= 1e-9;
    }
  } else if (op == "conditional_qe") {
    const Observable& a = obs_arg(ctx, args, "a");
    const Observable& b = obs_arg(ctx, args, "b");
    const PureState& psi = state_arg(ctx, args, "psi");
    const double given_b = number_arg(args, "given_b");
    const Flavor flavor = flavor_arg(args);
    const Complex value = conditional_qe(a, b, psi, given_b, flavor);
    out.outputs["re"] = value.real();
    out.outputs["im"] = value.imag();
    if (flavor == Flavor::Weak) {
      // Closed form <psi|E^B(b) A|psi> / <psi|E^B(b)|psi>.
      const CMatrix eb = b.spectral_projection(given_b).matrix();
      const Complex numerator =
          psi.vector().dot(eb * (a.matrix() * psi.vector()));
      const Complex denominator = psi.vector().dot(eb * psi.vector());
      const Complex closed = numerator / denominator;
      out.residuals["closed_form_deviation"] = std::abs(value - closed);
      out.pass = out.residuals["closed_form_deviation"] <= 1e-9;
    }
  } else if (op == "weak_value") {
    out.outputs = to_json(weak_value(obs_arg(ctx, args, "a"),
                                     state_arg(ctx, args, "psi_i"),
                                     state_arg(ctx, args, "psi_f")));
  } else if (op == "steinberg_check") {
    const double residual =
        steinberg_check(obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
                        state_arg(ctx, args, "psi"),
                        number_arg(args, "given_b"));
    out.outputs["residual"] = residual;
    out.residuals["residual"] = residual;
    out.pass = residual <= 1e-9;
  } else if (op == "perfectly_correlated") {
    const CorrelationReport report = perfectly_correlated(
        obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
        state_arg(ctx, args, "psi"));
    out.outputs = to_json(report);
    out.residuals = report.residuals;
    out.pass = !report.inconsistent;
  } else if (op == "transitivity_check") {
    const bool transitive = transitivity_check(
        obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
        obs_arg(ctx, args, "c"), state_arg(ctx, args, "psi"));
    out.outputs["transitive"] = transitive;
    out.pass = transitive;
  } else if (op == "heisenberg_meter") {
    out.outputs["meter"] =
        to_json(heisenberg_meter(anyproc_arg(ctx, args, "process")));
  } else if (op == "extract_povm") {
    const Povm povm = extract_povm(anyproc_arg(ctx, args, "process"));
    out.outputs["povm"] = to_json(povm);
    out.bound = povm;
  } else if (op == "output_distribution") {
    double cross = 0;
    out.outputs["distribution"] = to_json(output_distribution(
        anyproc_arg(ctx, args, "process"), state_arg(ctx, args, "psi"),
        &cross));
    out.residuals["cross_residual"] = cross;
    out.pass = cross <= 1e-9;
  } else if (op == "rms_errors") {
    out.outputs = to_json(rms_errors(
        simproc_arg(ctx, args, "process"), obs_arg(ctx, args, "a"),
        obs_arg(ctx, args, "b"), state_arg(ctx, args, "psi")));
  } else if (op == "uncertainty_report") {
    const SimultaneousProcess& sp = simproc_arg(ctx, args, "process");
    const Observable& a = obs_arg(ctx, args, "a");
    const Observable& b = obs_arg(ctx, args, "b");
    const PureState& psi = state_arg(ctx, args, "psi");
    const ErrorBudget budget = rms_errors(sp, a, b, psi);
    const UncertaintyReport report = uncertainty_report(budget);
    out.outputs["budget"] = to_json(budget);
    out.outputs["relation"] = to_json(report);
    out.outputs["mean_error_independent_a"] =
        mean_error_probe_independent(sp, a, NoiseSide::A, psi);
    out.outputs["mean_error_independent_b"] =
        mean_error_probe_independent(sp, b, NoiseSide::B, psi);
    out.residuals["uup_margin"] = report.rhs - report.uup_lhs;
    out.pass = report.uup_holds;
  } else if (op == "attach_maps") {
    const MeasuringProcess& base = anyproc_arg(ctx, args, "process");
    const std::vector<double> meter_values = base.meter().values();
    if (!args.contains("f_map") || !args.contains("g_map")) {
      throw BindingError("attach_maps: f_map and g_map are required");
    }
    out.bound = SimultaneousProcess(base,
                                    map_literal(args["f_map"], meter_values),
                                    map_literal(args["g_map"], meter_values));
    out.outputs["probe_dim"] = base.probe_dim();
  } else if (op == "verify_simultaneous") {
    const SimultaneityReport report = verify_simultaneous(
        simproc_arg(ctx, args, "process"), obs_arg(ctx, args, "a"),
        obs_arg(ctx, args, "b"), state_arg(ctx, args, "psi"));
    out.outputs = to_json(report);
    out.residuals = report.residuals;
    if (report.is_simultaneous) {
      // Consequences contracted by the theory.
      out.pass = report.residuals.at("eps_a") <= tol::verdict &&
                 report.residuals.at("eps_b") <= tol::verdict &&
                 report.residuals.at("projection_commutator_mean") <=
                     tol::verdict;
    }
  } else if (op == "joint_output") {
    double cross = 0;
    const JointOutputDistribution joint = joint_output(
        simproc_arg(ctx, args, "process"), state_arg(ctx, args, "psi"),
        &cross);
    out.outputs = to_json(joint);
    out.residuals["cross_residual"] = cross;
    out.pass = cross <= 1e-9;
  } else if (op == "joint_output_equals_weak") {
    const double residual = joint_output_equals_weak(
        simproc_arg(ctx, args, "process"), obs_arg(ctx, args, "a"),
        obs_arg(ctx, args, "b"), state_arg(ctx, args, "psi"));
    out.outputs["residual"] = residual;
    out.residuals["residual"] = residual;
    out.pass = residual <= 1e-8;
  } else if (op == "check_povm_marginals") {
    const std::string mode = arg_name(args, "mode");
    if (mode != "commute" && mode != "simul") {
      throw BindingError("check_povm_marginals: mode is 'commute' or 'simul'");
    }
    const MarginalCheck check = check_povm_marginals(
        povm_arg(ctx, args, "povm"), obs_arg(ctx, args, "a"),
        obs_arg(ctx, args, "b"), state_arg(ctx, args, "psi"),
        mode == "commute" ? MarginalMode::Commute : MarginalMode::Simul);
    out.outputs = to_json(check);
    out.residuals["max_row_residual"] = check.max_row_residual;
    out.residuals["max_col_residual"] = check.max_col_residual;
  } else if (op == "construct_eigenstate_measurement") {
    SimultaneousProcess process = construct_eigenstate_measurement(
        obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
        state_arg(ctx, args, "psi"));
    out.outputs["probe_dim"] = process.base().probe_dim();
    out.outputs["process"] = to_json(process);
    out.bound = std::move(process);
  } else if (op == "construct_commuting_measurement") {
    SimultaneousProcess process = construct_commuting_measurement(
        obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
        state_arg(ctx, args, "psi"));
    out.outputs["probe_dim"] = process.base().probe_dim();
    out.outputs["process"] = to_json(process);
    out.bound = std::move(process);
  } else if (op == "pad_probe") {
    SimultaneousProcess process =
        pad_probe(simproc_arg(ctx, args, "process"),
                  static_cast<Eigen::Index>(number_arg(args, "extra")));
    out.outputs["probe_dim"] = process.base().probe_dim();
    out.bound = std::move(process);
  } else if (op == "dim2_characterization") {
    const Dim2Report report = dim2_characterization(
        obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
        state_arg(ctx, args, "psi"));
    out.outputs = to_json(report);
    out.pass = report.consistent;
  } else if (op == "feasibility_search") {
    const int iters = args.contains("iters")
                          ? static_cast<int>(number_arg(args, "iters"))
                          : 10000;
    const std::uint64_t seed =
        args.contains("seed")
            ? static_cast<std::uint64_t>(number_arg(args, "seed"))
            : derive_seed(ctx.seed, static_cast<std::uint64_t>(ctx.task_index));
    const auto witness = feasibility_search(
        obs_arg(ctx, args, "a"), obs_arg(ctx, args, "b"),
        state_arg(ctx, args, "psi"), iters, seed);
    out.outputs["found"] = witness.has_value();
    if (witness) {
      out.outputs["povm"] = to_json(*witness);
      out.bound = *witness;
    }
  } else {
    throw UnknownOperation("unknown operation '" + op + "'");
  }
  return out;
}

ObjectValue object_from_json(const Json& spec,
                             const std::map<std::string, ObjectValue>& known) {
  if (spec.is_string()) {
    const std::string name = spec.get<std::string>();
    std::smatch match;
    if (std::regex_match(name, match,
                         std::regex(R"(von_neumann\((\w+)\))"))) {
      auto it = known.find(match[1]);
      if (it == known.end() ||
          !std::holds_alternative<Observable>(it->second)) {
        throw BindingError("von_neumann preset needs a declared observable");
      }
      return von_neumann_model(std::get<Observable>(it->second));
    }
    if (std::regex_match(name, match,
                         std::regex(R"(trivial\((\d+)(?:\s*,\s*(\d+))?\))"))) {
      const Eigen::Index first = std::stol(match[1]);
      const Eigen::Index probe =
          match[2].matched ? std::stol(match[2]) : first;
      return trivial_process(first, probe);
    }
    // Falls through to the observable presets.
    return observable_from_json(spec);
  }
  if (!spec.is_object() || spec.size() != 1) {
    throw ParseError("object: expected exactly one of "
                     "observable/state/process/povm or a preset string");
  }
  const auto& [key, value] = *spec.items().begin();
  if (key == "observable") return observable_from_json(value);
  if (key == "state") return state_from_json(value);
  if (key == "povm") return povm_from_json(value);
  if (key == "process") {
    if (value.is_object() && value.contains("f_map")) {
      return simultaneous_process_from_json(value);
    }
    return process_from_json(value);
  }
  throw ParseError("object: unknown kind '" + key + "'");
}

bool expectation_matches(const Json& outputs, const std::string& pointer,
                         const Json& expected, double tolerance) {
  Json actual;
  try {
    actual = outputs.at(Json::json_pointer(pointer));
  } catch (const Json::exception&) {
    return false;
  }
  if (expected.is_number() && actual.is_number()) {
    return std::abs(expected.get<double>() - actual.get<double>()) <=
           tolerance;
  }
  return expected == actual;
}

}  // namespace

Json RunReport::to_json() const {
  Json j;
  j["schema"] = 1;
  j["scenario"] = scenario;
  j["seed"] = seed;
  j["pass"] = pass;
  j["tasks"] = Json::array();
  for (const auto& t : tasks) {
    Json task;
    task["index"] = t.index;
    task["op"] = t.op;
    task["inputs"] = t.inputs;
    task["outputs"] = t.outputs;
    task["residuals"] = Json::object();
    for (const auto& [label, value] : t.residuals) {
      task["residuals"][label] = value;
    }
    task["pass"] = t.pass;
    task["wall_ms"] = t.wall_ms;
    j["tasks"].push_back(std::move(task));
  }
  return j;
}

RunReport run_scenario_json(const Json& document, const std::string& name,
                            std::uint64_t seed,
                            const std::optional<std::filesystem::path>& out_dir) {
  for (const auto& [key, value] : document.items()) {
    if (key != "schema" && key != "objects" && key != "tasks") {
      throw ParseError("scenario: unknown top-level field '" + key + "'");
    }
  }
  if (!document.contains("schema") || !document["schema"].is_number_integer() ||
      document["schema"].get<int>() != 1) {
    throw ParseError("scenario: unsupported schema version");
  }

  Context ctx;
  ctx.seed = seed;
  if (document.contains("objects")) {
    // Non-process objects first, then process presets that may reference them.
    std::vector<std::pair<std::string, Json>> deferred;
    for (const auto& [name_, spec] : document["objects"].items()) {
      if (spec.is_string() &&
          spec.get<std::string>().rfind("von_neumann", 0) == 0) {
        deferred.emplace_back(name_, spec);
        continue;
      }
      ctx.objects.emplace(name_, object_from_json(spec, ctx.objects));
    }
    for (const auto& [name_, spec] : deferred) {
      ctx.objects.emplace(name_, object_from_json(spec, ctx.objects));
    }
  }

  RunReport report;
  report.scenario = name;
  report.seed = seed;

  if (!document.contains("tasks")) return report;
  if (!document["tasks"].is_array()) {
    throw ParseError("scenario: tasks must be an array");
  }

  int index = 0;
  for (const auto& task : document["tasks"]) {
    for (const auto& [key, value] : task.items()) {
      if (key != "op" && key != "args" && key != "out" && key != "bind" &&
          key != "expect" && key != "expect_tol") {
        throw ParseError("task " + std::to_string(index) +
                         ": unknown field '" + key + "'");
      }
    }
    if (!task.contains("op") || !task["op"].is_string()) {
      throw ParseError("task " + std::to_string(index) + ": missing op");
    }
    ctx.task_index = index;
    const std::string op = task["op"].get<std::string>();
    const Json args = task.value("args", Json::object());

    const auto start = std::chrono::steady_clock::now();
    TaskOutcome outcome;
    try {
      outcome = run_op(ctx, op, args);
    } catch (const DimensionMismatch& e) {
      throw DimensionMismatch("task " + std::to_string(index) + ": " +
                              e.what());
    }
    const auto stop = std::chrono::steady_clock::now();

    if (outcome.bound && task.contains("bind")) {
      ctx.objects.insert_or_assign(task["bind"].get<std::string>(),
                                   std::move(*outcome.bound));
    } else if (task.contains("bind")) {
      throw BindingError("task " + std::to_string(index) +
                         ": operation '" + op + "' produces nothing to bind");
    }

    if (task.contains("expect")) {
      const double tolerance = task.value("expect_tol", 1e-9);
      for (const auto& [pointer, expected] : task["expect"].items()) {
        if (!expectation_matches(outcome.outputs, pointer, expected,
                                 tolerance)) {
          outcome.pass = false;
          outcome.outputs["failed_expectation"] = pointer;
        }
      }
    }

    if (task.contains("out") && out_dir) {
      const std::filesystem::path path = *out_dir / task["out"].get<std::string>();
      std::filesystem::create_directories(path.parent_path());
      std::ofstream file(path);
      if (path.extension() == ".csv") {
        if (outcome.outputs.contains("entries")) {
          // Joint output distributions carry their entries inline.
          file << "a,b,re,im\n";
          for (const auto& e : outcome.outputs["entries"]) {
            file << format_double(e["x"].get<double>()) << ','
                 << format_double(e["y"].get<double>()) << ','
                 << format_double(e["p"].get<double>()) << ",0\n";
          }
        } else if (outcome.outputs.contains("distribution")) {
          const Json& dist = outcome.outputs["distribution"];
          file << "a,b,re,im\n";
          for (const auto& e : dist) {
            if (e.contains("b")) {
              file << format_double(e["a"].get<double>()) << ','
                   << format_double(e["b"].get<double>()) << ','
                   << format_double(e.value("re", e.value("p", 0.0))) << ','
                   << format_double(e.value("im", 0.0)) << '\n';
            } else {
              file << format_double(e.value("a", e.value("x", 0.0))) << ",0,"
                   << format_double(e.value("re", e.value("p", 0.0))) << ','
                   << format_double(e.value("im", 0.0)) << '\n';
            }
          }
        } else {
          file << outcome.outputs.dump(2) << '\n';
        }
      } else {
        file << outcome.outputs.dump(2) << '\n';
      }
    }

    TaskReport task_report;
    task_report.index = index;
    task_report.op = op;
    task_report.inputs = args;
    task_report.outputs = std::move(outcome.outputs);
    task_report.residuals = std::move(outcome.residuals);
    task_report.pass = outcome.pass;
    task_report.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    report.pass = report.pass && task_report.pass;
    report.tasks.push_back(std::move(task_report));
    ++index;
  }
  return report;
}

RunReport run_scenario(const std::filesystem::path& scenario_file,
                       std::uint64_t seed,
                       const std::optional<std::filesystem::path>& out_dir) {
  std::ifstream in(scenario_file);
  if (!in) {
    throw ParseError("cannot open scenario file " + scenario_file.string());
  }
  Json document;
  try {
    document = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("scenario " + scenario_file.string() + ": " + e.what());
  }
  RunReport report = run_scenario_json(
      document, scenario_file.stem().string(), seed, out_dir);
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    std::ofstream out(*out_dir / "report.json");
    out << report.to_json().dump(2) << '\n';
  }
  return report;
}

}  // namespace qsimul
