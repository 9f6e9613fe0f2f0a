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

#ifndef EMSRELOC_TRACE_H_
#define EMSRELOC_TRACE_H_

#include <chrono>
#include <optional>
#include <vector>

#include "emsreloc/evaluation.h"
#include "emsreloc/solver.h"

namespace emsreloc {

// One solved (period, model, alpha) cell of a sweep or horizon run.
struct SweepRow {
  int period = 1;  // 1-based
  ModelKind model = ModelKind::kRp;
  double alpha = 0.0;
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_deployment = false;  // false for Infeasible and empty limit hits
  double objective = 0.0;
  int single_covered = 0;
  int double_covered = 0;
  double relocation_cost = 0.0;
  std::chrono::nanoseconds wall_time{0};
};

// Builds a row from a solver result.
SweepRow MakeRow(int period, ModelKind model, double alpha,
                 const Solution& solution);

// Orders rows by (period, model, alpha), RP before DRP.
void SortRows(std::vector<SweepRow>& rows);

// Positions the fleet moved to at the end of a period.
struct PeriodDeployment {
  int period = 1;
  ModelKind model = ModelKind::kRp;
  std::optional<double> operating_alpha;  // empty when no alpha was feasible
  // Station (0-based) per ambulance of the full fleet; -1 while busy.
  std::vector<int> station_of;
};

struct HorizonTrace {
  std::vector<SweepRow> rows;
  std::vector<PeriodDeployment> deployments;
};

// Concatenates traces and re-sorts the rows.
HorizonTrace MergeTraces(std::vector<HorizonTrace> traces);

}  // namespace emsreloc

#endif  // EMSRELOC_TRACE_H_
