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

#ifndef EMSRELOC_EVALUATION_H_
#define EMSRELOC_EVALUATION_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emsreloc/coverage.h"
#include "emsreloc/instance.h"

namespace emsreloc {

// RP: maximize sum d_i x2_i - penalties, s.t. sum d_i x1_i >= alpha sum d_i.
// DRP: maximize sum (d1_i x1_i + d2_i x2_i) - penalties, s.t.
//      sum d1_i x1_i >= alpha sum d1_i.
// Both share absolute coverage (2), linking (4), (5), one station per
// ambulance (6) and capacities (7).
enum class ModelKind { kRp, kDrp };

std::string_view ModelName(ModelKind kind);  // "RP" / "DRP"
// Accepts "rp"/"drp" in any case.
std::optional<ModelKind> ParseModelKind(std::string_view text);

// Number of the proportional-coverage constraint: 3 for RP, 12 for DRP.
int ProportionalConstraintId(ModelKind kind);

// Objective and constraint weights of one model, per point.
struct ModelWeights {
  std::vector<double> single;      // coefficient of x1_i in the objective
  std::vector<double> double_;     // coefficient of x2_i in the objective
  std::vector<double> proportion;  // weight in the proportional constraint
};

ModelWeights WeightsFor(const Instance& instance, ModelKind kind);

// Coverage decision x1, x2 for fixed per-point counts within r1.
struct CoverageDecision {
  std::vector<bool> x1;
  std::vector<bool> x2;

  bool operator==(const CoverageDecision&) const = default;
};

// x1 = (c1 >= 1), x2 = (c1 >= 2). Pointwise maximal under (4) and (5), so it
// is optimal for any nonnegative weights and maximizes the left side of the
// proportional constraint.
CoverageDecision GreedyCoverageDecision(std::span<const int> c1);

// Objective contribution of coverage under greedy x, summed in point order.
double CoverageValue(const ModelWeights& weights, std::span<const int> c1);
// Sum of proportion weights over points with c1 >= 1.
double ProportionalCoverage(const ModelWeights& weights,
                            std::span<const int> c1);
// alpha times the total proportion weight.
double ProportionalTarget(const ModelWeights& weights, double alpha);
// lhs >= rhs up to a relative tolerance of 1e-9.
bool MeetsProportion(double lhs, double rhs);

// Sum over ambulances of M[station_of[k]][k], in ambulance order.
double RelocationCost(const PenaltyMatrix& penalties,
                      std::span<const int> station_of);

struct Violation {
  int constraint = 0;        // constraint number as used in the model
  std::vector<int> indices;  // 1-based point, ambulance or station ids
  std::string detail;

  bool operator==(const Violation&) const = default;
};

std::string FormatViolation(const Violation& violation);

struct Evaluation {
  bool feasible = false;
  double objective = 0.0;
  double coverage_value = 0.0;
  double relocation_cost = 0.0;
  double proportional_lhs = 0.0;
  double proportional_rhs = 0.0;
  std::vector<bool> x1;
  std::vector<bool> x2;
  std::vector<int> c1;
  std::vector<int> c2;
  std::vector<Violation> violations;

  int single_covered() const;  // |{i : x1_i = 1}|
  int double_covered() const;  // |{i : x2_i = 1}|
};

// Throws DimensionError when coverage, penalties or deployment do not match
// the instance. Infeasibility is reported in the result.
Evaluation EvaluateDeployment(const Instance& instance,
                              const CoverageMatrices& coverage,
                              const Deployment& deployment,
                              const PenaltyMatrix& penalties, ModelKind kind);

// Violated constraints (2), (3)/(12), (6), (7) of a deployment. Empty exactly
// when EvaluateDeployment reports feasible.
std::vector<Violation> FeasibilityCertificate(const Instance& instance,
                                              const CoverageMatrices& coverage,
                                              const Deployment& deployment,
                                              ModelKind kind);

// Throws DimensionError unless coverage is n x m for the instance.
void CheckCoverageShape(const Instance& instance,
                        const CoverageMatrices& coverage);
// Throws DimensionError unless penalties are m x |K| for the instance.
void CheckPenaltyShape(const Instance& instance,
                       const PenaltyMatrix& penalties);

}  // namespace emsreloc

#endif  // EMSRELOC_EVALUATION_H_
