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

#ifndef EMSRELOC_SWEEP_H_
#define EMSRELOC_SWEEP_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emsreloc/evaluation.h"
#include "emsreloc/instance.h"
#include "emsreloc/solver.h"
#include "emsreloc/trace.h"

namespace emsreloc {

// from, from+step, ..., to (inclusive up to rounding), each value rounded to
// 12 decimals so that e.g. 0.90 + 10 * 0.01 lands on 1.0 exactly. Throws
// Error on step <= 0 or from > to.
std::vector<double> AlphaGrid(double from, double to, double step);

// 0.90, 0.91, ..., 1.00.
std::vector<double> DefaultAlphaGrid();

// "from:to:step" or a comma-separated list. Throws Error on bad input.
std::vector<double> ParseAlphaGrid(std::string_view text);

struct SweepConfig {
  SolverConfig solver;
  // Worker threads for independent (model, alpha) solves; rows are sorted
  // afterwards, so the result does not depend on it.
  int jobs = 1;
  int period = 1;
};

// One row per (kind, alpha). Penalties default to zero.
std::vector<SweepRow> AlphaSweep(const Instance& instance,
                                 std::span<const ModelKind> kinds,
                                 std::span<const double> alpha_grid,
                                 const std::optional<PenaltyMatrix>& penalties,
                                 const SweepConfig& config = {});

// Side-by-side coverage of two models at one alpha.
struct ComparisonRow {
  int period = 1;
  double alpha = 0.0;
  SolveStatus baseline_status = SolveStatus::kInfeasible;
  SolveStatus candidate_status = SolveStatus::kInfeasible;
  int baseline_single = 0;
  int candidate_single = 0;
  int baseline_double = 0;
  int candidate_double = 0;
  // candidate - baseline; empty unless both rows have a deployment.
  std::optional<int> delta_single;
  std::optional<int> delta_double;
};

// Pairs rows of `baseline` and `candidate` by (period, alpha). Throws Error
// when the two models were not run on the same grid.
std::vector<ComparisonRow> CompareReport(std::span<const SweepRow> rows,
                                         ModelKind baseline = ModelKind::kRp,
                                         ModelKind candidate = ModelKind::kDrp);

inline constexpr std::string_view kResultsCsvHeader =
    "period,model,alpha,status,objective,single_covered,double_covered,"
    "relocation_cost,wall_ms";

// Header plus one line per row. alpha has 2 decimals, reals 6; rows without
// a deployment leave objective, counts and relocation_cost empty.
void WriteResultsCsv(std::span<const SweepRow> rows, std::ostream& out);
std::string ResultsCsv(std::span<const SweepRow> rows);
// Same, without the wall_ms column; the byte-stable form.
std::string ResultsCsvWithoutTiming(std::span<const SweepRow> rows);

void WriteComparisonCsv(std::span<const ComparisonRow> rows, std::ostream& out);
std::string ComparisonCsv(std::span<const ComparisonRow> rows);

// period,model,operating_alpha,ambulance,station with 1-based ids; busy
// ambulances have an empty station.
std::string DeploymentsCsv(std::span<const PeriodDeployment> deployments);

}  // namespace emsreloc

#endif  // EMSRELOC_SWEEP_H_
