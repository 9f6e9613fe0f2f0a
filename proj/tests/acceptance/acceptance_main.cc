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

// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "emsreloc/coverage.h"
#include "emsreloc/dynamics.h"
#include "emsreloc/evaluation.h"
#include "emsreloc/generator.h"
#include "emsreloc/milp.h"
#include "emsreloc/solver.h"
#include "emsreloc/sweep.h"
#include "emsreloc/trace.h"
#include "test_util.h"

namespace emsreloc {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kCaseSeed = 7;
constexpr ModelKind kKinds[] = {ModelKind::kRp, ModelKind::kDrp};
constexpr double kAlphas[] = {0.0, 0.5, 0.9, 1.0};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

bool Close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

Instance WithAlpha(Instance instance, double alpha) {
  instance.alpha = alpha;
  return instance;
}

// Collects the first few failure messages of a criterion.
class Check {
 public:
  void Fail(const std::string& message) {
    ++failures_;
    if (messages_.size() < 5) messages_.push_back(message);
  }
  bool ok() const { return failures_ == 0; }
  std::string Summary() const {
    std::ostringstream out;
    out << failures_ << " failure(s)";
    for (const auto& m : messages_) out << "; " << m;
    return out.str();
  }

 private:
  int failures_ = 0;
  std::vector<std::string> messages_;
};

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string csv;  // byte-stable rows used by the determinism criterion
};

// Random small instances: branch-and-bound against full enumeration and an
// independent oracle, with random penalties.
Outcome ExactnessOnSmallInstances() {
  const auto start = Clock::now();
  Check check;
  std::vector<SweepRow> rows;
  int solves = 0;
  constexpr int kInstances = 240;
  for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
    const Instance base = testing::RandomInstance(seed);
    const PenaltyMatrix penalties = testing::RandomPenalties(base, seed + 1000);
    for (double alpha : kAlphas) {
      const Instance inst = WithAlpha(base, alpha);
      const CoverageMatrices cov = BuildCoverageMatrices(inst);
      for (ModelKind kind : kKinds) {
        ++solves;
        const Solution bb = Solve(inst, cov, penalties, kind);
        const Solution bf = BruteForce(inst, cov, penalties, kind);
        const testing::OracleOptimum oracle =
            testing::OracleSolve(inst, penalties, kind, /*enumerate_x=*/false);
        const std::string where = "seed " + std::to_string(seed) + " alpha " +
                                  std::to_string(alpha) + " " +
                                  std::string(ModelName(kind));
        const bool bb_feasible = bb.status == SolveStatus::kOptimal;
        if (bb_feasible != (bf.status == SolveStatus::kOptimal) ||
            bb_feasible != oracle.feasible) {
          check.Fail(where + ": feasibility disagrees");
          continue;
        }
        if (bb_feasible) {
          if (!Close(bb.objective(), bf.objective()) ||
              !Close(bb.objective(), oracle.objective)) {
            check.Fail(where + ": objective disagrees");
          }
          if (bb.deployment->stations() != oracle.station_of) {
            check.Fail(where + ": tie-break differs from the smallest optimum");
          }
        }
        rows.push_back(MakeRow(static_cast<int>(seed) + 1, kind, alpha, bb));
      }
    }
  }
  const double seconds = Seconds(start);
  if (seconds > 60.0) check.Fail("took " + std::to_string(seconds) + " s");
  SortRows(rows);
  std::ostringstream detail;
  detail << kInstances << " instances, " << solves << " solves agree with enumeration and oracle in "
         << seconds << " s";
  return {check.ok(), check.ok() ? detail.str() : check.Summary(),
          ResultsCsvWithoutTiming(rows)};
}

// Every feasible deployment of random instances satisfies the exported
// program, and the program's objective matches the evaluation.
Outcome ProgramAgreesWithEvaluation() {
  Check check;
  std::int64_t deployments = 0;
  std::ostringstream lp_texts;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance base = testing::RandomInstance(seed);
    const PenaltyMatrix penalties = testing::RandomPenalties(base, seed + 1000);
    for (double alpha : kAlphas) {
      const Instance inst = WithAlpha(base, alpha);
      const CoverageMatrices cov = BuildCoverageMatrices(inst);
      for (ModelKind kind : kKinds) {
        const LinearProgram lp = BuildMilp(inst, cov, penalties, kind);
        lp_texts << ExportLp(lp);
        testing::ForEachDeployment(
            inst.num_stations(), inst.fleet_size(), [&](const std::vector<int>& s) {
              const Deployment d(s);
              const Evaluation ev = EvaluateDeployment(inst, cov, d, penalties, kind);
              if (!ev.feasible) return;
              ++deployments;
              const std::vector<double> values = AssignmentFor(lp, cov, d);
              const auto violated = ViolatedRows(lp, values);
              if (!violated.empty()) {
                check.Fail("seed " + std::to_string(seed) + ": row " + violated.front() +
                           " violated");
              }
              if (std::abs(ObjectiveValue(lp, values) - ev.objective) > 1e-9) {
                check.Fail("seed " + std::to_string(seed) + ": objective mismatch");
              }
            });
      }
    }
  }
  std::ostringstream detail;
  detail << deployments << " feasible deployments of 60 instances x 4 alphas satisfy every row";
  return {check.ok(), check.ok() ? detail.str() : check.Summary(), lp_texts.str()};
}

// Case-scale sweep: every alpha of the default grid solves to optimality
// within 10 s.
Outcome CaseScaleSweep() {
  Check check;
  const Instance inst = GenerateCaseInstance(kCaseSeed);
  const std::vector<double> grid = DefaultAlphaGrid();
  const std::vector<SweepRow> rows = AlphaSweep(inst, kKinds, grid, std::nullopt);
  double slowest = 0.0;
  for (const SweepRow& row : rows) {
    const double seconds = std::chrono::duration<double>(row.wall_time).count();
    slowest = std::max(slowest, seconds);
    if (row.status != SolveStatus::kOptimal) {
      check.Fail(std::string(ModelName(row.model)) + " alpha " + std::to_string(row.alpha) +
                 " is " + std::string(StatusName(row.status)));
    }
    if (seconds > 10.0) check.Fail("solve took " + std::to_string(seconds) + " s");
  }
  std::ostringstream detail;
  detail << rows.size() << " case-scale solves optimal, slowest " << slowest * 1e3 << " ms";
  return {check.ok(), check.ok() ? detail.str() : check.Summary(),
          ResultsCsvWithoutTiming(rows)};
}

// Two-period horizon with one dispatch in period 2.
Outcome DispatchHorizon() {
  Check check;
  const Instance inst = GenerateCaseInstance(kCaseSeed);
  const std::vector<double> grid = DefaultAlphaGrid();
  const Event events[] = {{2, EventKind::kDispatch, 3, std::nullopt}};
  HorizonConfig config;
  config.periods = 2;
  std::vector<HorizonTrace> traces;
  for (ModelKind kind : kKinds) traces.push_back(RunHorizon(inst, events, kind, grid, config));
  const HorizonTrace trace = MergeTraces(std::move(traces));
  if (trace.rows.size() != 44) {
    check.Fail("expected 44 rows, got " + std::to_string(trace.rows.size()));
  }
  for (const PeriodDeployment& d : trace.deployments) {
    if (d.period == 2 && d.station_of[3] != -1) check.Fail("dispatched ambulance placed");
  }
  int compared = 0;
  for (const ComparisonRow& r : CompareReport(trace.rows)) {
    if (r.period != 1 || !r.delta_double) continue;
    ++compared;
    if (r.baseline_double < r.candidate_double) {
      check.Fail("alpha " + std::to_string(r.alpha) + ": RP double coverage " +
                 std::to_string(r.baseline_double) + " below DRP " +
                 std::to_string(r.candidate_double));
    }
  }
  if (compared == 0) check.Fail("no alpha feasible for both models");

  // The demand-weighted form, sum of d_i over doubly covered points, is what
  // RP maximizes, so it must hold even where the point count does not.
  const CoverageMatrices cov = BuildCoverageMatrices(inst);
  const PenaltyMatrix zeros = InitPenalties(inst.num_stations(), inst.fleet_size());
  int weighted_ok = 0;
  for (double alpha : grid) {
    const Instance at = WithAlpha(inst, alpha);
    const Solution rp = Solve(at, cov, zeros, ModelKind::kRp);
    const Solution drp = Solve(at, cov, zeros, ModelKind::kDrp);
    if (!rp.deployment || !drp.deployment) continue;
    const double drp_weighted =
        EvaluateDeployment(at, cov, *drp.deployment, zeros, ModelKind::kRp).coverage_value;
    if (rp.evaluation->coverage_value + 1e-9 >= drp_weighted) {
      ++weighted_ok;
    } else {
      check.Fail("alpha " + std::to_string(alpha) + ": RP weighted double coverage below DRP");
    }
  }
  std::ostringstream detail;
  detail << trace.rows.size() << " rows; point counts compared at " << compared
         << " alphas of period 1; RP weighted double coverage >= DRP at " << weighted_ok;
  return {check.ok(), check.ok() ? detail.str() : check.Summary() + " | " + detail.str(),
          ResultsCsvWithoutTiming(trace.rows) + DeploymentsCsv(trace.deployments)};
}

// Optimal objective never increases with alpha, and infeasibility persists.
Outcome AlphaMonotonicity() {
  Check check;
  int sweeps = 0;
  const auto check_rows = [&](const std::vector<SweepRow>& rows, const std::string& where) {
    for (ModelKind kind : kKinds) {
      std::optional<double> previous;
      bool infeasible_seen = false;
      for (const SweepRow& row : rows) {
        if (row.model != kind) continue;
        if (!row.has_deployment) {
          infeasible_seen = true;
          continue;
        }
        if (infeasible_seen) check.Fail(where + ": feasible again after infeasible");
        if (previous && row.objective > *previous + 1e-9) {
          check.Fail(where + ": objective rises at alpha " + std::to_string(row.alpha));
        }
        previous = row.objective;
      }
    }
    ++sweeps;
  };
  const std::vector<double> fine = AlphaGrid(0.0, 1.0, 0.05);
  for (std::uint64_t seed = 0; seed < 240; ++seed) {
    const Instance inst = testing::RandomInstance(seed);
    const PenaltyMatrix penalties = testing::RandomPenalties(inst, seed + 1000);
    check_rows(AlphaSweep(inst, kKinds, fine, penalties), "seed " + std::to_string(seed));
  }
  for (std::uint64_t seed : {kCaseSeed, std::uint64_t{1}, std::uint64_t{2}}) {
    check_rows(AlphaSweep(GenerateCaseInstance(seed), kKinds, DefaultAlphaGrid(),
                          std::nullopt),
               "case seed " + std::to_string(seed));
  }
  std::ostringstream detail;
  detail << sweeps << " sweeps monotone in alpha";
  return {check.ok(), check.ok() ? detail.str() : check.Summary(), {}};
}

// Symmetry breaking never changes the optimum; scaling all demands keeps
// the optimal deployment when penalties are zero.
Outcome InvariantsUnderReformulation() {
  Check check;
  int cases = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = testing::RandomInstance(seed + 9000);
    const CoverageMatrices cov = BuildCoverageMatrices(inst);
    const PenaltyMatrix penalties = testing::RandomPenalties(inst, seed);
    const PenaltyMatrix zeros = InitPenalties(inst.num_stations(), inst.fleet_size());
    SolverConfig plain;
    plain.symmetry_breaking = false;
    for (ModelKind kind : kKinds) {
      ++cases;
      const Solution on = Solve(inst, cov, penalties, kind);
      const Solution off = Solve(inst, cov, penalties, kind, plain);
      if (on.status != off.status || !Close(on.objective(), off.objective())) {
        check.Fail("seed " + std::to_string(seed) + ": symmetry breaking changes the optimum");
      }
      const Instance scaled = ScaleDemands(inst, 7.3);
      const Solution a = Solve(inst, cov, zeros, kind);
      const Solution b = Solve(scaled, cov, zeros, kind);
      if (a.status != b.status) {
        check.Fail("seed " + std::to_string(seed) + ": scaling changes feasibility");
      } else if (a.status == SolveStatus::kOptimal) {
        const auto oracle = testing::OracleSolve(inst, zeros, kind, false);
        const auto& set = oracle.optimal_set;
        if (std::find(set.begin(), set.end(), b.deployment->stations()) == set.end()) {
          check.Fail("seed " + std::to_string(seed) + ": scaled optimum not optimal");
        }
        if (!Close(b.objective(), 7.3 * a.objective())) {
          check.Fail("seed " + std::to_string(seed) + ": objective does not scale");
        }
      }
    }
  }
  std::ostringstream detail;
  detail << cases << " cases invariant under symmetry breaking and demand scaling";
  return {check.ok(), check.ok() ? detail.str() : check.Summary(), {}};
}

int Report(int criterion, const Outcome& outcome) {
  std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << outcome.detail << std::endl;
  return outcome.pass ? 0 : 1;
}

int Main() {
  int failures = 0;
  const Outcome c1 = ExactnessOnSmallInstances();
  failures += Report(1, c1);
  const Outcome c2 = ProgramAgreesWithEvaluation();
  failures += Report(2, c2);
  const Outcome c3 = CaseScaleSweep();
  failures += Report(3, c3);
  const Outcome c4 = DispatchHorizon();
  failures += Report(4, c4);
  failures += Report(5, AlphaMonotonicity());

  // Repeat the runs above and compare their byte-stable output.
  const std::vector<std::function<Outcome()>> again = {
      ExactnessOnSmallInstances, ProgramAgreesWithEvaluation, CaseScaleSweep,
      DispatchHorizon};
  const std::string first = c1.csv + c2.csv + c3.csv + c4.csv;
  std::string second;
  for (const auto& run : again) second += run().csv;
  Outcome c6;
  c6.pass = !first.empty() && first == second;
  c6.detail = c6.pass ? std::to_string(first.size()) + " bytes of output identical across runs"
                      : "output differs between runs";
  failures += Report(6, c6);

  failures += Report(7, InvariantsUnderReformulation());
  return failures;
}

}  // namespace
}  // namespace emsreloc

int main() { return emsreloc::Main(); }
