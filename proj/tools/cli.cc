// Copyright 2026 The emsreloc Authors
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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "emsreloc/coverage.h"
#include "emsreloc/dynamics.h"
#include "emsreloc/errors.h"
#include "emsreloc/evaluation.h"
#include "emsreloc/generator.h"
#include "emsreloc/instance.h"
#include "emsreloc/io.h"
#include "emsreloc/milp.h"
#include "emsreloc/solver.h"
#include "emsreloc/sweep.h"
#include "emsreloc/trace.h"

namespace emsreloc::cli {
namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct SolverFlags {
  std::int64_t node_limit = 0;
  std::int64_t time_limit_ms = 0;
  bool no_symmetry_breaking = false;

  void Register(CLI::App* app) {
    app->add_option("--node-limit", node_limit,
                    "Stop after this many search nodes (0: unlimited)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--time-limit-ms", time_limit_ms,
                    "Stop after this many milliseconds (0: unlimited)")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--no-symmetry-breaking", no_symmetry_breaking,
                  "Branch on identical ambulances independently");
  }

  SolverConfig Config() const {
    SolverConfig config;
    if (node_limit > 0) config.node_limit = node_limit;
    if (time_limit_ms > 0) {
      config.time_limit = std::chrono::milliseconds(time_limit_ms);
    }
    config.symmetry_breaking = !no_symmetry_breaking;
    return config;
  }
};

struct Flags {
  std::string instance;
  std::string penalties;
  std::string model = "drp";
  std::string models = "rp,drp";
  double alpha = 0.0;
  double alpha_from = 0.90;
  double alpha_to = 1.00;
  double alpha_step = 0.01;
  std::string alpha_grid;
  std::string out;
  std::string compare_out;
  std::string deployments_out;
  std::string events;
  int periods = 0;
  double operating_alpha = 0.0;
  int jobs = 1;
  std::uint64_t seed = 0;
  SolverFlags solver;
};

ModelKind ToModel(const std::string& text) {
  const auto kind = ParseModelKind(text);
  if (!kind) {
    throw UsageError(fmt::format("unknown model \"{}\" (rp or drp)", text));
  }
  return *kind;
}

std::vector<ModelKind> ToModels(const std::string& text) {
  std::vector<ModelKind> kinds;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ',')) {
    if (piece.empty()) continue;
    const ModelKind kind = ToModel(piece);
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
      kinds.push_back(kind);
    }
  }
  if (kinds.empty()) throw UsageError("no model given");
  std::sort(kinds.begin(), kinds.end());
  return kinds;
}

std::vector<double> GridFrom(const std::string& text) {
  try {
    const std::vector<double> grid = ParseAlphaGrid(text);
    if (grid.empty()) throw UsageError("empty alpha grid");
    for (double a : grid) {
      if (a < 0.0 || a > 1.0) {
        throw UsageError(fmt::format("alpha {} outside [0, 1]", a));
      }
    }
    return grid;
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::optional<PenaltyMatrix> PenaltiesFrom(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return LoadPenalties(path);
}

void Emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    WriteTextFile(path, content);
  }
}

std::string Stations(const std::vector<int>& station_of) {
  std::vector<int> ids;
  ids.reserve(station_of.size());
  for (int s : station_of) ids.push_back(s + 1);
  return fmt::format("[{}]", fmt::join(ids, ", "));
}

int RunSolve(const Flags& f, bool alpha_given, std::ostream& out) {
  Instance instance = LoadInstance(f.instance);
  if (alpha_given) instance.alpha = f.alpha;
  const ModelKind kind = ToModel(f.model);
  const CoverageMatrices coverage = BuildCoverageMatrices(instance);
  const PenaltyMatrix penalties =
      PenaltiesFrom(f.penalties)
          .value_or(PenaltyMatrix::Zero(instance.num_stations(),
                                        instance.fleet_size()));
  const Solution s =
      Solve(instance, coverage, penalties, kind, f.solver.Config());

  out << fmt::format("model: {}\nalpha: {:.2f}\nstatus: {}\n", ModelName(kind),
                     instance.alpha, StatusName(s.status));
  if (s.deployment) {
    const Evaluation& e = *s.evaluation;
    out << fmt::format(
        "deployment: {}\nobjective: {:.6f}\nsingle_covered: {}\n"
        "double_covered: {}\nrelocation_cost: {:.6f}\n",
        Stations(s.deployment->stations()), e.objective, e.single_covered(),
        e.double_covered(), e.relocation_cost);
    out << fmt::format("c1: [{}]\nc2: [{}]\n", fmt::join(e.c1, ", "),
                       fmt::join(e.c2, ", "));
  }
  for (const Violation& v : s.infeasibility) {
    out << "violation: " << FormatViolation(v) << '\n';
  }
  if (s.status == SolveStatus::kLimitReached) {
    out << fmt::format("best_bound: {:.6f}\n", s.best_bound);
  }
  out << fmt::format("nodes_explored: {}\n", s.nodes_explored);

  switch (s.status) {
    case SolveStatus::kOptimal:
      return kExitOk;
    case SolveStatus::kInfeasible:
      return kExitInfeasible;
    case SolveStatus::kLimitReached:
      return kExitLimit;
  }
  return kExitOk;
}

bool AnyLimit(const std::vector<SweepRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) {
    return r.status == SolveStatus::kLimitReached;
  });
}

int RunSweep(const Flags& f, std::ostream& out) {
  const Instance instance = LoadInstance(f.instance);
  const std::vector<ModelKind> kinds = ToModels(f.models);
  std::vector<double> grid;
  if (!f.alpha_grid.empty()) {
    grid = GridFrom(f.alpha_grid);
  } else {
    grid = GridFrom(fmt::format("{}:{}:{}", f.alpha_from, f.alpha_to,
                                f.alpha_step));
  }
  SweepConfig config;
  config.solver = f.solver.Config();
  config.jobs = f.jobs;
  const std::vector<SweepRow> rows =
      AlphaSweep(instance, kinds, grid, PenaltiesFrom(f.penalties), config);
  Emit(f.out, ResultsCsv(rows), out);
  if (!f.compare_out.empty()) {
    if (kinds.size() != 2) {
      throw UsageError("--compare-out needs both rp and drp");
    }
    WriteTextFile(f.compare_out, ComparisonCsv(CompareReport(rows)));
  }
  return AnyLimit(rows) ? kExitLimit : kExitOk;
}

int RunSimulate(const Flags& f, bool operating_given, std::ostream& out) {
  const Instance instance = LoadInstance(f.instance);
  const std::vector<ModelKind> kinds = ToModels(f.models);
  const std::vector<double> grid = GridFrom(f.alpha_grid);
  const std::vector<Event> events =
      f.events.empty() ? std::vector<Event>{} : LoadEvents(f.events);
  HorizonConfig config;
  config.periods = f.periods;
  if (operating_given) config.operating_alpha = f.operating_alpha;
  config.initial_penalties = PenaltiesFrom(f.penalties);
  config.solver = f.solver.Config();

  std::vector<HorizonTrace> traces;
  for (ModelKind kind : kinds) {
    traces.push_back(RunHorizon(instance, events, kind, grid, config));
  }
  const HorizonTrace trace = MergeTraces(std::move(traces));
  Emit(f.out, ResultsCsv(trace.rows), out);
  if (!f.deployments_out.empty()) {
    WriteTextFile(f.deployments_out, DeploymentsCsv(trace.deployments));
  }
  return AnyLimit(trace.rows) ? kExitLimit : kExitOk;
}

int RunExportLp(const Flags& f, bool alpha_given, std::ostream& out) {
  Instance instance = LoadInstance(f.instance);
  if (alpha_given) instance.alpha = f.alpha;
  const CoverageMatrices coverage = BuildCoverageMatrices(instance);
  const PenaltyMatrix penalties =
      PenaltiesFrom(f.penalties)
          .value_or(PenaltyMatrix::Zero(instance.num_stations(),
                                        instance.fleet_size()));
  const LinearProgram lp =
      BuildMilp(instance, coverage, penalties, ToModel(f.model));
  Emit(f.out, ExportLp(lp), out);
  return kExitOk;
}

int RunValidate(const Flags& f, std::ostream& out) {
  const Instance instance = LoadInstance(f.instance, /*validate=*/false);
  const ValidationReport report = ValidateInstance(instance);
  out << fmt::format("points: {}\nstations: {}\nambulances: {}\n",
                     instance.num_points(), instance.num_stations(),
                     instance.fleet_size());
  out << report.ToString();
  bool ok = report.ok();
  if (ok && !f.penalties.empty()) {
    const PenaltyMatrix penalties = LoadPenalties(f.penalties);
    try {
      CheckPenaltyShape(instance, penalties);
    } catch (const DimensionError& e) {
      out << "error: " << e.what() << '\n';
      ok = false;
    }
  }
  out << (ok ? "valid\n" : "invalid\n");
  return ok ? kExitOk : kExitUsage;
}

int RunGenerate(const Flags& f, bool alpha_given, std::ostream& out) {
  GeneratorOptions options;
  if (alpha_given) options.alpha = f.alpha;
  Emit(f.out, WriteInstance(GenerateCaseInstance(f.seed, options)), out);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app("Exact ambulance relocation models (RP and DRP)", "emsreloc");
  app.require_subcommand(1);
  Flags f;

  auto* solve = app.add_subcommand("solve", "Solve one model at one alpha");
  solve->add_option("--instance", f.instance, "Instance JSON")->required();
  solve->add_option("--model", f.model, "rp or drp")->required();
  auto* solve_alpha = solve->add_option("--alpha", f.alpha,
                                        "Proportional coverage level")
                          ->check(CLI::Range(0.0, 1.0));
  solve->add_option("--penalties", f.penalties, "Penalty matrix JSON");
  f.solver.Register(solve);

  auto* sweep = app.add_subcommand("sweep", "Solve models over an alpha grid");
  sweep->add_option("--instance", f.instance, "Instance JSON")->required();
  sweep->add_option("--models", f.models, "Comma-separated models")
      ->capture_default_str();
  sweep->add_option("--alpha-from", f.alpha_from)->capture_default_str();
  sweep->add_option("--alpha-to", f.alpha_to)->capture_default_str();
  sweep->add_option("--alpha-step", f.alpha_step)->capture_default_str();
  sweep->add_option("--alpha-grid", f.alpha_grid,
                    "from:to:step or a comma list; overrides --alpha-*");
  sweep->add_option("--out", f.out, "Results CSV (stdout if omitted)");
  sweep->add_option("--compare-out", f.compare_out,
                    "RP versus DRP coverage CSV");
  sweep->add_option("--penalties", f.penalties, "Penalty matrix JSON");
  sweep->add_option("--jobs", f.jobs, "Parallel solves")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  f.solver.Register(sweep);

  auto* simulate =
      app.add_subcommand("simulate", "Rolling-horizon relocation run");
  simulate->add_option("--instance", f.instance, "Instance JSON")->required();
  simulate->add_option("--events", f.events, "Events JSON");
  simulate->add_option("--model", f.models, "rp, drp or rp,drp")
      ->capture_default_str();
  f.alpha_grid = "0.90:1.00:0.01";
  simulate->add_option("--alpha-grid", f.alpha_grid,
                       "from:to:step or a comma list")
      ->capture_default_str();
  simulate->add_option("--periods", f.periods,
                       "Number of periods (default: last event period)")
      ->check(CLI::NonNegativeNumber);
  auto* operating = simulate->add_option(
      "--operating-alpha", f.operating_alpha,
      "Alpha whose deployment the fleet follows (default: smallest feasible)");
  simulate->add_option("--out", f.out, "Results CSV (stdout if omitted)");
  simulate->add_option("--deployments-out", f.deployments_out,
                       "Per-period fleet positions CSV");
  simulate->add_option("--penalties", f.penalties,
                       "First-period penalty matrix JSON (default: zeros)");
  f.solver.Register(simulate);

  auto* export_lp = app.add_subcommand("export-lp", "Write the model as LP");
  export_lp->add_option("--instance", f.instance, "Instance JSON")->required();
  export_lp->add_option("--model", f.model, "rp or drp")->required();
  auto* export_alpha = export_lp->add_option("--alpha", f.alpha)
                           ->check(CLI::Range(0.0, 1.0));
  export_lp->add_option("--out", f.out, "LP file (stdout if omitted)");
  export_lp->add_option("--penalties", f.penalties, "Penalty matrix JSON");

  auto* validate = app.add_subcommand("validate", "Check an instance");
  validate->add_option("--instance", f.instance, "Instance JSON")->required();
  validate->add_option("--penalties", f.penalties, "Penalty matrix JSON");

  auto* generate =
      app.add_subcommand("generate", "Write a synthetic case-scale instance");
  generate->add_option("--seed", f.seed, "Random seed")->required();
  generate->add_option("--out", f.out, "Instance JSON (stdout if omitted)");
  auto* generate_alpha = generate->add_option("--alpha", f.alpha)
                             ->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return RunSolve(f, solve_alpha->count() > 0, out);
    if (sweep->parsed()) return RunSweep(f, out);
    if (simulate->parsed()) {
      return RunSimulate(f, operating->count() > 0, out);
    }
    if (export_lp->parsed()) {
      return RunExportLp(f, export_alpha->count() > 0, out);
    }
    if (validate->parsed()) return RunValidate(f, out);
    if (generate->parsed()) {
      return RunGenerate(f, generate_alpha->count() > 0, out);
    }
  } catch (const InvalidInstanceError& e) {
    err << "error: " << e.what();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace emsreloc::cli
