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

#ifndef EMSRELOC_SOLVER_H_
#define EMSRELOC_SOLVER_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "emsreloc/coverage.h"
#include "emsreloc/evaluation.h"
#include "emsreloc/instance.h"

namespace emsreloc {

enum class SolveStatus { kOptimal, kInfeasible, kLimitReached };

std::string_view StatusName(SolveStatus status);

struct SolverConfig {
  std::optional<std::int64_t> node_limit;
  std::optional<std::chrono::milliseconds> time_limit;
  // Ambulances with identical penalty columns take nondecreasing stations.
  bool symmetry_breaking = true;
  // Bound-based pruning. Disabling it turns the search into a full
  // enumeration; used to check that the bound never cuts off an optimum.
  bool bound_pruning = true;
  // Drops subtrees that cannot satisfy constraint (2) or the proportional
  // constraint at any leaf.
  bool feasibility_pruning = true;
};

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<Deployment> deployment;
  std::optional<Evaluation> evaluation;
  std::int64_t nodes_explored = 0;
  double best_bound = 0.0;
  std::chrono::nanoseconds wall_time{0};
  // Why no feasible deployment exists; filled when status is kInfeasible.
  std::vector<Violation> infeasibility;

  double objective() const { return evaluation ? evaluation->objective : 0.0; }
};

// Partial assignment of ambulances 0..depth-1 with incrementally maintained
// coverage counts. Built and modified only through SearchModel.
struct PartialAssignment {
  std::vector<int> station_of;
  std::vector<int> loads;
  std::vector<int> c1;
  std::vector<int> c2;
  std::vector<double> penalty_prefix{0.0};  // penalty of the first k ambulances

  std::size_t depth() const { return station_of.size(); }
  double penalty() const { return penalty_prefix.back(); }
};

enum class BoundKind {
  // Full coverage value minus assigned penalties minus the cheapest
  // penalty of every unassigned ambulance.
  kCeiling,
  // Current coverage value plus, per unassigned ambulance, the best station's
  // optimistic marginal gain net of its penalty.
  kMarginal,
  // min(kCeiling, kMarginal); what the solver prunes with.
  kCombined,
};

// Precomputed data of one model instance for the deployment search.
class SearchModel {
 public:
  SearchModel(const Instance& instance, const CoverageMatrices& coverage,
              const PenaltyMatrix& penalties, ModelKind kind);

  PartialAssignment Root() const;
  // Places the next ambulance at `station`. Capacity is not checked.
  void Push(PartialAssignment& partial, int station) const;
  void Pop(PartialAssignment& partial) const;

  // Admissible upper bound on the objective of any capacity-respecting
  // completion of `partial` (feasible or not). -infinity when no completion
  // exists.
  double Bound(const PartialAssignment& partial, BoundKind kind) const;

  // True when no completion can satisfy constraint (2) or the proportional
  // constraint.
  bool CannotBeFeasible(const PartialAssignment& partial) const;

  // Exact leaf evaluation, bitwise identical to EvaluateDeployment.
  bool LeafFeasible(const PartialAssignment& partial) const;
  double LeafObjective(const PartialAssignment& partial) const;

  std::size_t num_points() const { return num_points_; }
  std::size_t num_stations() const { return capacity_.size(); }
  std::size_t fleet_size() const { return fleet_size_; }
  int capacity(std::size_t station) const { return capacity_[station]; }
  const PenaltyMatrix& penalties() const { return *penalties_; }

 private:
  double OptimisticGain(int c1, std::size_t point, std::size_t remaining) const;

  const CoverageMatrices* coverage_;
  const PenaltyMatrix* penalties_;
  std::size_t num_points_;
  std::size_t fleet_size_;
  std::vector<int> capacity_;
  ModelWeights weights_;
  double full_value_ = 0.0;
  double proportional_rhs_ = 0.0;
  std::vector<double> min_penalty_;  // per ambulance
};

// Bound of `partial` under `kind`; kCeiling by default.
double NodeBound(const SearchModel& model, const PartialAssignment& partial,
                 BoundKind kind = BoundKind::kCeiling);

// Exact depth-first branch-and-bound over deployments. Ambulances are
// branched in index order, stations in increasing index; among optima within
// 1e-9 the lexicographically smallest station vector is returned.
Solution Solve(const Instance& instance, const CoverageMatrices& coverage,
               const PenaltyMatrix& penalties, ModelKind kind,
               const SolverConfig& config = {});

// Largest m^|K| that BruteForce accepts.
inline constexpr std::uint64_t kBruteForceLimit = 10'000'000;

// Enumerates every capacity-feasible deployment. Throws SizeGuardError when
// m^|K| exceeds kBruteForceLimit.
Solution BruteForce(const Instance& instance, const CoverageMatrices& coverage,
                    const PenaltyMatrix& penalties, ModelKind kind);

// Explains why no feasible deployment exists: insufficient capacity,
// points no station reaches within r2, point sets the fleet is too small to
// cover jointly, or otherwise the proportional constraint.
std::vector<Violation> DiagnoseInfeasibility(const Instance& instance,
                                             const CoverageMatrices& coverage,
                                             ModelKind kind);

}  // namespace emsreloc

#endif  // EMSRELOC_SOLVER_H_
