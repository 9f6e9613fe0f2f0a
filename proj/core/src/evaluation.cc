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

#include "emsreloc/evaluation.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "emsreloc/errors.h"

namespace emsreloc {

std::string_view ModelName(ModelKind kind) {
  return kind == ModelKind::kRp ? "RP" : "DRP";
}

std::optional<ModelKind> ParseModelKind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "rp") return ModelKind::kRp;
  if (lower == "drp") return ModelKind::kDrp;
  return std::nullopt;
}

int ProportionalConstraintId(ModelKind kind) {
  return kind == ModelKind::kRp ? 3 : 12;
}

ModelWeights WeightsFor(const Instance& instance, ModelKind kind) {
  const std::size_t n = instance.num_points();
  ModelWeights w{std::vector<double>(n), std::vector<double>(n),
                 std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const DemandPoint& p = instance.points[i];
    if (kind == ModelKind::kRp) {
      w.single[i] = 0.0;
      w.double_[i] = p.d;
      w.proportion[i] = p.d;
    } else {
      w.single[i] = p.d1;
      w.double_[i] = p.d2;
      w.proportion[i] = p.d1;
    }
  }
  return w;
}

CoverageDecision GreedyCoverageDecision(std::span<const int> c1) {
  CoverageDecision out{std::vector<bool>(c1.size()),
                       std::vector<bool>(c1.size())};
  for (std::size_t i = 0; i < c1.size(); ++i) {
    out.x1[i] = c1[i] >= 1;
    out.x2[i] = c1[i] >= 2;
  }
  return out;
}

double CoverageValue(const ModelWeights& weights, std::span<const int> c1) {
  double value = 0.0;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (c1[i] >= 1) value += weights.single[i];
    if (c1[i] >= 2) value += weights.double_[i];
  }
  return value;
}

double ProportionalCoverage(const ModelWeights& weights,
                            std::span<const int> c1) {
  double lhs = 0.0;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (c1[i] >= 1) lhs += weights.proportion[i];
  }
  return lhs;
}

double ProportionalTarget(const ModelWeights& weights, double alpha) {
  double total = 0.0;
  for (double w : weights.proportion) total += w;
  return alpha * total;
}

bool MeetsProportion(double lhs, double rhs) {
  return lhs >= rhs - 1e-9 * std::abs(rhs);
}

double RelocationCost(const PenaltyMatrix& penalties,
                      std::span<const int> station_of) {
  double cost = 0.0;
  for (std::size_t k = 0; k < station_of.size(); ++k) {
    cost += penalties(static_cast<std::size_t>(station_of[k]), k);
  }
  return cost;
}

std::string FormatViolation(const Violation& v) {
  std::string out = fmt::format("constraint ({})", v.constraint);
  if (!v.indices.empty()) out += fmt::format(" [{}]", fmt::join(v.indices, ", "));
  if (!v.detail.empty()) out += ": " + v.detail;
  return out;
}

int Evaluation::single_covered() const {
  return static_cast<int>(std::count(x1.begin(), x1.end(), true));
}

int Evaluation::double_covered() const {
  return static_cast<int>(std::count(x2.begin(), x2.end(), true));
}

void CheckCoverageShape(const Instance& instance,
                        const CoverageMatrices& coverage) {
  if (coverage.num_points() != instance.num_points() ||
      coverage.num_stations() != instance.num_stations()) {
    throw DimensionError(fmt::format(
        "coverage matrices are {}x{}, instance has n={} m={}",
        coverage.num_points(), coverage.num_stations(), instance.num_points(),
        instance.num_stations()));
  }
}

void CheckPenaltyShape(const Instance& instance,
                       const PenaltyMatrix& penalties) {
  if (penalties.num_stations() != instance.num_stations() ||
      penalties.fleet_size() != instance.fleet_size()) {
    throw DimensionError(fmt::format(
        "penalty matrix is {}x{}, expected {}x{}", penalties.num_stations(),
        penalties.fleet_size(), instance.num_stations(),
        instance.fleet_size()));
  }
}

namespace {

void CheckDeploymentShape(const Instance& instance,
                          const Deployment& deployment) {
  if (deployment.fleet_size() != instance.fleet_size()) {
    throw DimensionError(fmt::format("deployment places {} ambulances, fleet "
                                     "has {}",
                                     deployment.fleet_size(),
                                     instance.fleet_size()));
  }
  for (std::size_t k = 0; k < deployment.fleet_size(); ++k) {
    const int j = deployment.station_of(k);
    if (j < 0 || static_cast<std::size_t>(j) >= instance.num_stations()) {
      throw DimensionError(fmt::format(
          "ambulance {} assigned to station {} outside 1..{}", k + 1, j + 1,
          instance.num_stations()));
    }
  }
}

// Shared by EvaluateDeployment and FeasibilityCertificate so both agree.
std::vector<Violation> Violations(const Instance& instance,
                                  const Deployment& deployment,
                                  const CoverageCounts& counts, ModelKind kind,
                                  double lhs, double rhs) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < counts.c2.size(); ++i) {
    if (counts.c2[i] < 1) {
      out.push_back({2,
                     {static_cast<int>(i) + 1},
                     fmt::format("point {} has no ambulance within r2", i + 1)});
    }
  }
  if (!MeetsProportion(lhs, rhs)) {
    out.push_back({ProportionalConstraintId(kind),
                   {},
                   fmt::format("covered demand {:.6f} < required {:.6f}", lhs,
                               rhs)});
  }
  const std::vector<int> loads = deployment.Loads(instance.num_stations());
  for (std::size_t j = 0; j < loads.size(); ++j) {
    if (loads[j] > instance.stations[j].capacity) {
      out.push_back({7,
                     {static_cast<int>(j) + 1},
                     fmt::format("station {} holds {} ambulances, capacity {}",
                                 j + 1, loads[j],
                                 instance.stations[j].capacity)});
    }
  }
  return out;
}

}  // namespace

Evaluation EvaluateDeployment(const Instance& instance,
                              const CoverageMatrices& coverage,
                              const Deployment& deployment,
                              const PenaltyMatrix& penalties, ModelKind kind) {
  CheckCoverageShape(instance, coverage);
  CheckPenaltyShape(instance, penalties);
  CheckDeploymentShape(instance, deployment);

  const ModelWeights weights = WeightsFor(instance, kind);
  CoverageCounts counts = CountCoverage(coverage, deployment);
  CoverageDecision x = GreedyCoverageDecision(counts.c1);

  Evaluation e;
  e.coverage_value = CoverageValue(weights, counts.c1);
  e.relocation_cost = RelocationCost(penalties, deployment.stations());
  e.objective = e.coverage_value - e.relocation_cost;
  e.proportional_lhs = ProportionalCoverage(weights, counts.c1);
  e.proportional_rhs = ProportionalTarget(weights, instance.alpha);
  e.violations = Violations(instance, deployment, counts, kind,
                            e.proportional_lhs, e.proportional_rhs);
  e.feasible = e.violations.empty();
  e.x1 = std::move(x.x1);
  e.x2 = std::move(x.x2);
  e.c1 = std::move(counts.c1);
  e.c2 = std::move(counts.c2);
  return e;
}

std::vector<Violation> FeasibilityCertificate(const Instance& instance,
                                              const CoverageMatrices& coverage,
                                              const Deployment& deployment,
                                              ModelKind kind) {
  CheckCoverageShape(instance, coverage);
  CheckDeploymentShape(instance, deployment);
  const ModelWeights weights = WeightsFor(instance, kind);
  const CoverageCounts counts = CountCoverage(coverage, deployment);
  return Violations(instance, deployment, counts, kind,
                    ProportionalCoverage(weights, counts.c1),
                    ProportionalTarget(weights, instance.alpha));
}

}  // namespace emsreloc
