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

#include "emsreloc/trace.h"

#include <algorithm>
#include <tuple>

namespace emsreloc {

SweepRow MakeRow(int period, ModelKind model, double alpha,
                 const Solution& solution) {
  SweepRow row;
  row.period = period;
  row.model = model;
  row.alpha = alpha;
  row.status = solution.status;
  row.wall_time = solution.wall_time;
  if (solution.evaluation) {
    row.has_deployment = true;
    row.objective = solution.evaluation->objective;
    row.single_covered = solution.evaluation->single_covered();
    row.double_covered = solution.evaluation->double_covered();
    row.relocation_cost = solution.evaluation->relocation_cost;
  }
  return row;
}

void SortRows(std::vector<SweepRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     return std::tuple(a.period, static_cast<int>(a.model),
                                       a.alpha) <
                            std::tuple(b.period, static_cast<int>(b.model),
                                       b.alpha);
                   });
}

HorizonTrace MergeTraces(std::vector<HorizonTrace> traces) {
  HorizonTrace out;
  for (HorizonTrace& t : traces) {
    out.rows.insert(out.rows.end(), t.rows.begin(), t.rows.end());
    out.deployments.insert(out.deployments.end(), t.deployments.begin(),
                           t.deployments.end());
  }
  SortRows(out.rows);
  std::stable_sort(out.deployments.begin(), out.deployments.end(),
                   [](const PeriodDeployment& a, const PeriodDeployment& b) {
                     return std::tuple(a.period, static_cast<int>(a.model)) <
                            std::tuple(b.period, static_cast<int>(b.model));
                   });
  return out;
}

}  // namespace emsreloc
