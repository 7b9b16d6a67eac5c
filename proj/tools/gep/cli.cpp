// Copyright 2026 The gep-tsa Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gep/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gep/algorithms.hpp"
#include "gep/data.hpp"
#include "gep/error.hpp"
#include "gep/instance.hpp"
#include "gep/manifest.hpp"
#include "gep/model.hpp"
#include "gep/mps.hpp"
#include "gep/partition.hpp"
#include "gep/solver.hpp"
#include "gep/tsa.hpp"

namespace gep::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Flag combinations that CLI11 cannot express.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A solve ended without an optimal result.
class SolverLimit : public Error {
 public:
  using Error::Error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError(fmt::format("cannot open '{}'", path.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string money(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.6f}", v);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json investments_json(const InvestmentDecision& inv) {
  return {{"x_g", inv.x_g}, {"x_s", inv.x_s}, {"b_g", inv.b_g}, {"b_s", inv.b_s}};
}

std::string dispatch_csv(const DispatchSchedule& d) {
  const std::size_t g = d.p_g.size();
  const std::size_t n = d.e_s.size();
  std::string out = "step";
  for (std::size_t i = 0; i < g; ++i) out += fmt::format(",p_g_{}", i);
  for (std::size_t i = 0; i < n; ++i) out += fmt::format(",e_s_{},p_c_{},p_d_{}", i, i, i);
  out += ",e_ns\n";
  for (int k = 0; k < d.steps; ++k) {
    out += fmt::format("{}", k);
    for (std::size_t i = 0; i < g; ++i) out += fmt::format(",{:.6f}", d.p_g[i][k]);
    for (std::size_t i = 0; i < n; ++i) {
      out += fmt::format(",{:.6f},{:.6f},{:.6f}", d.e_s[i][k], d.p_c[i][k], d.p_d[i][k]);
    }
    out += fmt::format(",{:.6f}\n", d.e_ns[k]);
  }
  return out;
}

// A schema-valid file with inconsistent values is still bad input, not a bad
// flag.
GepInstance read_instance(const fs::path& path) {
  try {
    return load_instance(path);
  } catch (const InvalidArgument& e) {
    throw IngestionError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

Partition load_partition(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return path.extension() == ".json" ? partition_from_json(text) : partition_from_csv(text);
  } catch (const InvalidArgument& e) {
    throw IngestionError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("GEP_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return ".";
}

// Shared state of one invocation: where outputs go and the manifest that
// lists them.
class Session {
 public:
  Session(fs::path out_dir, const std::string& command, const std::vector<std::string>& args)
      : dir_(std::move(out_dir)) {
    fs::create_directories(dir_);
    manifest_.emplace(dir_ / fmt::format("{}.manifest.json", command), command, args);
  }

  RunManifest& manifest() { return *manifest_; }
  fs::path resolve(const fs::path& p) const { return p.is_absolute() ? p : dir_ / p; }

  void write(const fs::path& name, const std::string& content) {
    const fs::path path = resolve(name);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IngestionError(fmt::format("cannot write '{}'", path.string()));
    out << content;
    if (!out.flush()) throw IngestionError(fmt::format("write to '{}' failed", path.string()));
    manifest_->add_output(path);
  }

 private:
  fs::path dir_;
  std::optional<RunManifest> manifest_;
};

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  int generators = 10;
  int storages = 1;
  std::uint64_t seed = 0;
  std::optional<int> horizon;
  double delta = 1.0;
  std::string profiles = "synth";
  std::string demand_csv, wind_csv, solar_csv;
  std::string output = "instance.json";
};

void cmd_generate(const GenerateOptions& o, Session& s, std::ostream& out) {
  const bool csv = o.profiles == "csv";
  const bool any_csv = !o.demand_csv.empty() || !o.wind_csv.empty() || !o.solar_csv.empty();
  if (csv && (o.demand_csv.empty() || o.wind_csv.empty() || o.solar_csv.empty())) {
    throw UsageError("--profiles csv needs --demand-csv, --wind-csv and --solar-csv");
  }
  if (!csv && any_csv) throw UsageError("profile files are only read with --profiles csv");

  SynthSpec spec;
  spec.n_generators = o.generators;
  spec.n_storages = o.storages;
  spec.seed = o.seed;
  spec.delta = o.delta;
  spec.horizon = o.horizon.value_or(8760);

  s.manifest().set_seed(o.seed);
  s.manifest().set_config({{"generators", o.generators},
                           {"storages", o.storages},
                           {"horizon", o.horizon ? json(*o.horizon) : json(nullptr)},
                           {"delta", o.delta},
                           {"profiles", o.profiles}});

  BaseProfiles base;
  if (csv) {
    s.manifest().begin();
    for (const auto& f : {o.demand_csv, o.wind_csv, o.solar_csv}) s.manifest().add_input(f);
    base.demand = load_series_csv(o.demand_csv, SeriesKind::kValue);
    base.wind = load_series_csv(o.wind_csv, SeriesKind::kFactor);
    base.solar = load_series_csv(o.solar_csv, SeriesKind::kFactor);
    const std::size_t shortest =
        std::min({base.demand.size(), base.wind.size(), base.solar.size()});
    const std::size_t wanted = o.horizon ? static_cast<std::size_t>(*o.horizon) : shortest;
    if (wanted > shortest) {
      throw IngestionError(
          fmt::format("profiles cover {} steps, horizon {} requested", shortest, wanted));
    }
    for (auto* v : {&base.demand, &base.wind, &base.solar}) v->resize(wanted);
    spec.horizon = static_cast<int>(wanted);
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (!csv) {
    s.manifest().begin();
    base = synth_profiles(o.seed, spec.horizon);
  }

  const GepInstance inst = generate_instance(spec, base.demand, base.wind, base.solar);
  s.write(o.output, instance_to_json(inst));
  const TechnologyMix mix = technology_mix(o.generators);
  out << fmt::format("instance: {} thermal, {} wind, {} solar, {} storage, {} steps -> {}\n",
                     mix.thermal, mix.wind, mix.solar, o.storages, spec.horizon,
                     s.resolve(o.output).string());
}

// ---------------------------------------------------------------- solve

struct SolveOptions {
  std::string instance;
  std::string mode = "full-milp";
  std::string partition;
  std::optional<double> zeta;
  bool allow_limit = false;
  double mip_gap = 1e-6;
  long node_limit = 200'000;
  std::string prefix = "solve";
};

// Blocks from a sliding-window pass over the duals of the relaxed full model.
Partition cluster_on_lp_duals(const GepInstance& inst, double zeta, const SolverConfig& cfg) {
  const LpProblem p = relax_binaries(build_full_model(inst));
  const SolveResult r = solve_lp(p, cfg);
  if (!r.optimal()) {
    throw SolverLimit(fmt::format("relaxed model for clustering: {}", to_string(r.status)));
  }
  std::vector<double> lambda(inst.horizon);
  for (int t = 0; t < inst.horizon; ++t) {
    lambda[t] = r.dual(p, fmt::format("balance[{}]", t));
  }
  return sliding_window_cluster(FeatureSeries::scalar(std::move(lambda)), zeta);
}

int cmd_solve(const SolveOptions& o, Session& s, std::ostream& out) {
  const bool agg = o.mode == "agg";
  if (agg && o.partition.empty() == !o.zeta.has_value()) {
    throw UsageError("--mode agg needs exactly one of --partition or --zeta");
  }
  if (!agg && (!o.partition.empty() || o.zeta)) {
    throw UsageError("--partition and --zeta apply to --mode agg only");
  }
  SolverConfig cfg;
  cfg.mip_gap = o.mip_gap;
  cfg.node_limit = o.node_limit;
  try {
    cfg.validate();
    if (o.zeta && !(*o.zeta >= 0.0)) throw InvalidArgument("--zeta must be nonnegative");
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }

  s.manifest().set_config({{"mode", o.mode},
                           {"partition", o.partition},
                           {"zeta", o.zeta ? json(*o.zeta) : json(nullptr)},
                           {"mip_gap", o.mip_gap},
                           {"node_limit", o.node_limit}});
  s.manifest().add_input(o.instance);
  if (!o.partition.empty()) s.manifest().add_input(o.partition);
  s.manifest().begin();

  const GepInstance inst = read_instance(o.instance);
  std::optional<Partition> part;
  LpProblem p;
  if (agg) {
    part = o.zeta ? cluster_on_lp_duals(inst, *o.zeta, cfg) : load_partition(o.partition);
    if (part->horizon() != inst.horizon) {
      throw IngestionError(fmt::format("partition covers {} steps, instance has {}",
                                       part->horizon(), inst.horizon));
    }
    p = build_aggregated_model(inst, *part);
    s.write(o.prefix + "_partition.csv", partition_to_csv(*part));
  } else {
    p = build_full_model(inst);
    if (o.mode == "full-lp") p = relax_binaries(p);
  }

  const bool lp = o.mode == "full-lp";
  const SolveResult r = lp ? solve_lp(p, cfg) : solve_milp(p, cfg);
  s.manifest().set_solver_status(std::string(to_string(r.status)));

  json result = {{"mode", o.mode},
                 {"status", to_string(r.status)},
                 {"objective", number_or_null(r.objective)},
                 {"bound", number_or_null(r.bound)},
                 {"steps", part ? part->size() : inst.horizon},
                 {"variables", p.num_variables()},
                 {"constraints", p.num_constraints()},
                 {"nonzeros", p.num_nonzeros()},
                 {"iterations", r.stats.iterations},
                 {"nodes", r.stats.nodes},
                 {"refactorizations", r.stats.refactorizations}};
  if (!r.primal.empty()) {
    result["investments"] = investments_json(extract_investments(inst, p, r.primal));
    s.write(o.prefix + "_dispatch.csv", dispatch_csv(extract_dispatch(p, r.primal)));
  }
  if (lp && !r.duals.empty()) {
    std::string duals = "row,dual\n";
    for (std::size_t i = 0; i < p.num_constraints(); ++i) {
      duals += fmt::format("{},{:.6f}\n", p.constraints()[i].tag, r.duals[i]);
    }
    s.write(o.prefix + "_duals.csv", duals);
  }
  s.write(o.prefix + "_result.json", result.dump(2) + "\n");
  // Wall time stays out of the result file so that reruns compare equal.
  s.write(o.prefix + "_stats.csv", fmt::format("wall_seconds,iterations,nodes\n{:.3f},{},{}\n",
                                               r.stats.wall_seconds, r.stats.iterations,
                                               r.stats.nodes));

  out << fmt::format("{}: {} objective {} bound {} ({} iterations, {} nodes, {:.2f} s)\n", o.mode,
                     to_string(r.status), money(r.objective), money(r.bound), r.stats.iterations,
                     r.stats.nodes, r.stats.wall_seconds);
  if (!r.optimal() && !o.allow_limit) {
    throw SolverLimit(fmt::format("solver finished with status {}", to_string(r.status)));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- run

struct RunOptions {
  std::string instance;
  std::string algo = "alg1";
  double eps_thr = 0.01;
  int max_iters = 25;
  double zeta = 10.0;
  std::uint64_t seed = 0;
  std::vector<int> calendar;
  bool allow_limit = false;
  std::string prefix = "";
};

std::string convergence_csv(const BoundsTrace& t) {
  std::string out =
      "iteration,lower_bound,upper_bound,gap_percent,step_lower_bound,step_upper_bound,"
      "clusters,surrogate_steps\n";
  for (const IterationRecord& r : t.iterations) {
    out += fmt::format("{},{},{},{:.9f},{},{},{},{}\n", r.iteration, money(r.lower_bound),
                       money(r.upper_bound), r.gap, money(r.step_lower), money(r.step_upper),
                       r.clusters, r.surrogate_steps);
  }
  return out;
}

int cmd_run(const RunOptions& o, Session& s, std::ostream& out) {
  AlgoConfig cfg;
  cfg.eps_thr = o.eps_thr;
  cfg.max_iters = o.max_iters;
  cfg.zeta = o.zeta;
  cfg.seed = o.seed;
  cfg.calendar = o.calendar;
  cfg.solver.seed = o.seed;

  s.manifest().set_seed(o.seed);
  s.manifest().set_config({{"algo", o.algo},
                           {"eps_thr", o.eps_thr},
                           {"max_iters", o.max_iters},
                           {"zeta", o.zeta},
                           {"calendar", o.calendar}});
  s.manifest().add_input(o.instance);
  s.manifest().begin();

  const GepInstance inst = read_instance(o.instance);
  try {
    cfg.validate(inst);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const BoundsTrace trace =
      o.algo == "alg1" ? run_algorithm1(inst, cfg) : run_algorithm2(inst, cfg);

  const std::string p = o.prefix.empty() ? o.algo : o.prefix;
  s.write(p + "_trace.csv", trace_to_csv(trace));
  s.write(p + "_trace.json", trace_to_json(trace));
  s.write(p + "_convergence.csv", convergence_csv(trace));
  std::string timings = "iteration,wall_seconds\n";
  for (const IterationRecord& r : trace.iterations) {
    timings += fmt::format("{},{:.3f}\n", r.iteration, r.wall_seconds);
  }
  s.write(p + "_timings.csv", timings);
  for (const IterationRecord& r : trace.iterations) {
    s.write(fmt::format("{}_partitions/iteration_{:02d}.csv", p, r.iteration),
            partition_to_csv(r.partition));
  }
  if (std::isfinite(trace.upper_bound)) {
    s.write(p + "_incumbent.json",
            json{{"objective", trace.upper_bound},
                 {"investments", investments_json(trace.incumbent)}}
                    .dump(2) +
                "\n");
    s.write(p + "_incumbent_dispatch.csv", dispatch_csv(trace.incumbent_dispatch));
  }

  for (const IterationRecord& r : trace.iterations) {
    out << fmt::format("{:>3}  LB {:>20}  UB {:>20}  gap {:>12.6f} %  K {:>6}  {:7.2f} s\n",
                       r.iteration, money(r.lower_bound), money(r.upper_bound), r.gap,
                       r.clusters, r.wall_seconds);
  }
  out << fmt::format("{}: {} after {} iterations, gap {:.6f} %\n", o.algo,
                     trace.converged ? "converged" : "stopped", trace.iterations.size(),
                     trace.gap);
  if (trace.error) {
    s.manifest().set_solver_status("error");
    throw SolverLimit(*trace.error);
  }
  s.manifest().set_solver_status(trace.converged ? "converged" : "iteration_limit");
  return kExitOk;
}

// ---------------------------------------------------------------- report

struct ReportOptions {
  std::vector<std::string> traces;
  std::string csv;
};

struct ReportRow {
  std::string label;
  BoundsTrace trace;
  std::optional<double> runtime;
};

// Sums `<prefix>_timings.csv` next to `<prefix>_trace.json` when present.
std::optional<double> sibling_runtime(const fs::path& trace_path) {
  std::string stem = trace_path.filename().string();
  const std::string suffix = "_trace.json";
  if (stem.size() <= suffix.size() || stem.compare(stem.size() - suffix.size(), suffix.size(),
                                                   suffix) != 0) {
    return std::nullopt;
  }
  stem.resize(stem.size() - suffix.size());
  std::ifstream in(trace_path.parent_path() / (stem + "_timings.csv"));
  if (!in) return std::nullopt;
  std::string line;
  std::getline(in, line);
  double total = 0.0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    total += std::strtod(line.c_str() + comma + 1, nullptr);
  }
  return total;
}

int cmd_report(const ReportOptions& o, Session& s, std::ostream& out) {
  if (o.traces.empty()) throw UsageError("report needs at least one trace file");
  s.manifest().set_config({{"csv", o.csv}});
  for (const auto& t : o.traces) s.manifest().add_input(t);
  s.manifest().begin();

  std::vector<ReportRow> rows;
  for (const auto& t : o.traces) {
    BoundsTrace trace;
    try {
      trace = trace_from_json(read_file(t));
    } catch (const IngestionError& e) {
      throw IngestionError(fmt::format("{}: {}", t, e.what()));
    }
    if (trace.iterations.empty()) throw IngestionError(fmt::format("{}: trace has no iterations", t));
    rows.push_back({fs::path(t).filename().string(), std::move(trace), sibling_runtime(t)});
  }

  const ReportRow& ref = rows.front();
  std::string csv =
      "trace,algorithm,iterations,lower_bound,upper_bound,gap_percent,clusters,horizon,"
      "reduction_percent,runtime_seconds,delta_upper_bound,delta_gap_percent,delta_clusters\n";
  out << fmt::format("{:<28} {:<12} {:>5} {:>20} {:>20} {:>12} {:>7} {:>7} {:>9} {:>10} {:>14} {:>12} {:>7}\n",
                     "trace", "algorithm", "iters", "lower_bound", "upper_bound", "gap_%", "K",
                     "|T|", "reduct_%", "runtime_s", "d_upper", "d_gap_%", "d_K");
  for (const ReportRow& r : rows) {
    const BoundsTrace& t = r.trace;
    const int k = t.iterations.back().clusters;
    const int k_ref = ref.trace.iterations.back().clusters;
    const double d_ub = t.upper_bound - ref.trace.upper_bound;
    const double d_gap = t.gap - ref.trace.gap;
    const std::string runtime = r.runtime ? fmt::format("{:.3f}", *r.runtime) : "n/a";
    // Differences of equal infinities are reported as zero.
    const auto diff = [](double d, double a, double b) { return a == b ? 0.0 : d; };
    const double du = diff(d_ub, t.upper_bound, ref.trace.upper_bound);
    const double dg = diff(d_gap, t.gap, ref.trace.gap);
    const double reduction = reduction_percent(k, t.horizon);
    csv += fmt::format("{},{},{},{},{},{:.9f},{},{},{:.1f},{},{},{:.9f},{}\n", r.label,
                       to_string(t.algorithm), t.iterations.size(), money(t.lower_bound),
                       money(t.upper_bound), t.gap, k, t.horizon, reduction, runtime, money(du),
                       dg, k - k_ref);
    out << fmt::format("{:<28} {:<12} {:>5} {:>20} {:>20} {:>12.6f} {:>7} {:>7} {:>9.1f} {:>10} {:>14} {:>12.6f} {:>7}\n",
                       r.label, to_string(t.algorithm), t.iterations.size(), money(t.lower_bound),
                       money(t.upper_bound), t.gap, k, t.horizon, reduction, runtime, money(du),
                       dg, k - k_ref);
  }
  if (!o.csv.empty()) s.write(o.csv, csv);
  return kExitOk;
}

// ---------------------------------------------------------------- export-mps

struct ExportOptions {
  std::string instance;
  std::string model = "full-milp";
  std::string partition;
  std::string names = "indexed";
  std::string output = "model.mps";
};

int cmd_export(const ExportOptions& o, Session& s, std::ostream& out) {
  if ((o.model == "agg") == o.partition.empty()) {
    throw UsageError("--partition is required with --model agg and only allowed there");
  }
  s.manifest().set_config({{"model", o.model}, {"partition", o.partition}, {"names", o.names}});
  s.manifest().add_input(o.instance);
  if (!o.partition.empty()) s.manifest().add_input(o.partition);
  s.manifest().begin();

  const GepInstance inst = read_instance(o.instance);
  LpProblem p = o.model == "agg" ? build_aggregated_model(inst, load_partition(o.partition))
                                 : build_full_model(inst);
  if (o.model == "full-lp") p = relax_binaries(p);
  const std::string text =
      export_mps(p, o.names == "truncate" ? MpsNaming::kTruncate : MpsNaming::kIndexed);
  s.write(o.output, text);
  out << fmt::format("{} columns, {} rows -> {}\n", p.num_variables(), p.num_constraints(),
                     s.resolve(o.output).string());
  return kExitOk;
}

}  // namespace

double reduction_percent(int clusters, int horizon) {
  if (horizon <= 0) throw DomainError("reduction_percent: horizon must be positive");
  return 100.0 * (1.0 - static_cast<double>(clusters) / horizon);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generation expansion planning with marginal-cost time series aggregation", "gep"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");
  std::string out_dir = default_out_dir().string();
  app.add_option("--out", out_dir, "Output directory (default $GEP_OUTPUT_DIR or .)");

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Build a synthetic instance");
  generate->add_option("--generators", gen.generators, "Number of generators")
      ->check(CLI::PositiveNumber);
  generate->add_option("--storages", gen.storages, "Number of storage units")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.seed, "Random seed");
  generate->add_option("--horizon", gen.horizon, "Time steps (synthetic default 8760)");
  generate->add_option("--delta", gen.delta, "Step length in hours");
  generate->add_option("--profiles", gen.profiles, "Base profile source")
      ->check(CLI::IsMember({"synth", "csv"}));
  generate->add_option("--demand-csv", gen.demand_csv, "Demand series (timestamp,value)");
  generate->add_option("--wind-csv", gen.wind_csv, "Wind capacity factors");
  generate->add_option("--solar-csv", gen.solar_csv, "Solar capacity factors");
  generate->add_option("-o,--output", gen.output, "Instance file");

  SolveOptions sol;
  auto* solve = app.add_subcommand("solve", "Solve the full or an aggregated model");
  solve->add_option("--instance", sol.instance, "Instance JSON")->required();
  solve->add_option("--mode", sol.mode, "Model")
      ->check(CLI::IsMember({"full-milp", "full-lp", "agg"}));
  solve->add_option("--partition", sol.partition, "Partition file (.csv or .json) for agg");
  solve->add_option("--zeta", sol.zeta, "Cluster relaxed-model duals with this threshold");
  solve->add_flag("--allow-limit", sol.allow_limit, "Exit 0 on non-optimal status");
  solve->add_option("--mip-gap", sol.mip_gap, "Relative MILP gap");
  solve->add_option("--node-limit", sol.node_limit, "Branch-and-bound node limit");
  solve->add_option("--prefix", sol.prefix, "Output file prefix");

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Run an iterative bounding algorithm");
  run_cmd->add_option("--instance", run_opts.instance, "Instance JSON")->required();
  run_cmd->add_option("--algo", run_opts.algo, "Algorithm")
      ->check(CLI::IsMember({"alg1", "alg2"}));
  run_cmd->add_option("--eps-thr", run_opts.eps_thr, "Gap threshold in percent");
  run_cmd->add_option("--max-iters", run_opts.max_iters, "Iteration limit");
  run_cmd->add_option("--zeta", run_opts.zeta, "Similarity threshold (EUR/MWh)");
  run_cmd->add_option("--seed", run_opts.seed, "Random seed");
  run_cmd->add_option("--calendar", run_opts.calendar, "Month lengths in days")
      ->delimiter(',');
  run_cmd->add_option("--prefix", run_opts.prefix, "Output file prefix (default: algo)");

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Summarise trace files");
  report->add_option("traces", rep.traces, "Trace JSON files; the first is the reference");
  report->add_option("--csv", rep.csv, "Also write the table as CSV");

  ExportOptions exp;
  auto* export_cmd = app.add_subcommand("export-mps", "Write a model in fixed MPS format");
  export_cmd->add_option("--instance", exp.instance, "Instance JSON")->required();
  export_cmd->add_option("--model", exp.model, "Model")
      ->check(CLI::IsMember({"full-milp", "full-lp", "agg"}));
  export_cmd->add_option("--partition", exp.partition, "Partition file for agg");
  export_cmd->add_option("--names", exp.names, "Column and row naming")
      ->check(CLI::IsMember({"indexed", "truncate"}));
  export_cmd->add_option("-o,--output", exp.output, "MPS file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  std::optional<Session> session;
  int code = kExitOk;
  std::string message;
  try {
    session.emplace(out_dir, chosen->get_name(), args);
    if (chosen == generate) {
      cmd_generate(gen, *session, out);
    } else if (chosen == solve) {
      code = cmd_solve(sol, *session, out);
    } else if (chosen == run_cmd) {
      code = cmd_run(run_opts, *session, out);
    } else if (chosen == report) {
      code = cmd_report(rep, *session, out);
    } else {
      code = cmd_export(exp, *session, out);
    }
  } catch (const UsageError& e) {
    code = kExitUsage;
    message = e.what();
  } catch (const InvalidArgument& e) {
    code = kExitUsage;
    message = e.what();
  } catch (const SolverLimit& e) {
    code = kExitSolver;
    message = e.what();
  } catch (const SolverError& e) {
    code = kExitSolver;
    message = e.what();
  } catch (const Error& e) {
    code = kExitInput;
    message = e.what();
  } catch (const fs::filesystem_error& e) {
    code = kExitInput;
    message = e.what();
  }
  if (!message.empty()) err << "error: " << message << '\n';
  if (session) {
    try {
      session->manifest().finish(code, message);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      if (code == kExitOk) code = kExitInput;
    }
  }
  return code;
}

}  // namespace gep::cli
