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

#include <benchmark/benchmark.h>

#include "emsreloc/coverage.h"
#include "emsreloc/dynamics.h"
#include "emsreloc/generator.h"
#include "emsreloc/milp.h"
#include "emsreloc/solver.h"

namespace emsreloc {
namespace {

constexpr std::uint64_t kCaseSeed = 7;

Instance CaseAt(double alpha) {
  Instance inst = GenerateCaseInstance(kCaseSeed);
  inst.alpha = alpha;
  return inst;
}

// Penalties of a second period: distance from the home stations.
PenaltyMatrix DistancePenalties(const Instance& inst) {
  return UpdatePenalties(InitialState(inst), inst.station_distance);
}

// Arguments: model (0 = RP, 1 = DRP), alpha in percent, distance penalties.
void BM_SolveCase(benchmark::State& state) {
  const ModelKind kind = state.range(0) == 0 ? ModelKind::kRp : ModelKind::kDrp;
  const Instance inst = CaseAt(static_cast<double>(state.range(1)) / 100.0);
  const CoverageMatrices cov = BuildCoverageMatrices(inst);
  const PenaltyMatrix penalties =
      state.range(2) != 0 ? DistancePenalties(inst)
                          : InitPenalties(inst.num_stations(), inst.fleet_size());
  std::int64_t nodes = 0;
  for (auto _ : state) {
    const Solution s = Solve(inst, cov, penalties, kind);
    nodes = s.nodes_explored;
    benchmark::DoNotOptimize(s.status);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_SolveCase)
    ->ArgsProduct({{0, 1}, {90, 95, 100}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

// Symmetry breaking on (1) and off (0). Uses a fleet of 6 since the full
// case without it runs for over a minute.
void BM_Symmetry(benchmark::State& state) {
  GeneratorOptions options;
  options.fleet_size = 6;
  const Instance inst = GenerateCaseInstance(kCaseSeed, options);
  const CoverageMatrices cov = BuildCoverageMatrices(inst);
  const PenaltyMatrix zeros = InitPenalties(inst.num_stations(), inst.fleet_size());
  SolverConfig config;
  config.symmetry_breaking = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Solve(inst, cov, zeros, ModelKind::kDrp, config).status);
  }
}
BENCHMARK(BM_Symmetry)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_BuildCoverage(benchmark::State& state) {
  const Instance inst = CaseAt(0.9);
  for (auto _ : state) benchmark::DoNotOptimize(BuildCoverageMatrices(inst));
}
BENCHMARK(BM_BuildCoverage);

void BM_ExportLp(benchmark::State& state) {
  const Instance inst = CaseAt(0.9);
  const CoverageMatrices cov = BuildCoverageMatrices(inst);
  const LinearProgram lp = BuildMilp(inst, cov, DistancePenalties(inst), ModelKind::kDrp);
  for (auto _ : state) benchmark::DoNotOptimize(ExportLp(lp));
}
BENCHMARK(BM_ExportLp);

}  // namespace
}  // namespace emsreloc

BENCHMARK_MAIN();
