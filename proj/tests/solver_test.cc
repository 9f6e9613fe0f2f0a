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

#include "emsreloc/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <gtest/gtest.h>

#include "emsreloc/coverage.h"
#include "emsreloc/errors.h"
#include "emsreloc/generator.h"
#include "test_util.h"

namespace emsreloc {
namespace {

using testing::MakeT1;

constexpr ModelKind kKinds[] = {ModelKind::kRp, ModelKind::kDrp};

PenaltyMatrix Zero(const Instance& inst) {
  return PenaltyMatrix::Zero(inst.num_stations(), inst.fleet_size());
}

Solution SolveZero(const Instance& inst, ModelKind kind,
                   const SolverConfig& config = {}) {
  return Solve(inst, BuildCoverageMatrices(inst), Zero(inst), kind, config);
}

TEST(Solve, T1) {
  const Solution drp = SolveZero(MakeT1(), ModelKind::kDrp);
  ASSERT_EQ(drp.status, SolveStatus::kOptimal);
  EXPECT_EQ(drp.deployment->stations(), (std::vector<int>{0}));
  EXPECT_DOUBLE_EQ(drp.objective(), 3.0);
  EXPECT_NEAR(drp.best_bound, drp.objective(), 1e-9);

  const Solution rp = SolveZero(MakeT1(), ModelKind::kRp);
  ASSERT_EQ(rp.status, SolveStatus::kOptimal);
  EXPECT_EQ(rp.deployment->stations(), (std::vector<int>{0}));
  EXPECT_DOUBLE_EQ(rp.objective(), 0.0);
}

TEST(Solve, T1PairBothKinds) {
  const Instance inst = testing::MakeT1Pair();
  const Solution rp = SolveZero(inst, ModelKind::kRp);
  ASSERT_EQ(rp.status, SolveStatus::kOptimal);
  EXPECT_EQ(rp.deployment->stations(), (std::vector<int>{0, 0}));
  EXPECT_DOUBLE_EQ(rp.objective(), 3.0);
  EXPECT_EQ(rp.evaluation->c1[0], 2);
  EXPECT_TRUE(rp.evaluation->x2[0]);

  const Solution drp = SolveZero(inst, ModelKind::kDrp);
  ASSERT_EQ(drp.status, SolveStatus::kOptimal);
  EXPECT_EQ(drp.deployment->stations(), (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(drp.objective(), 5.0);
}

TEST(Solve, T1DisconnectedIsInfeasible) {
  for (ModelKind kind : kKinds) {
    const Solution s = SolveZero(testing::MakeT1Disconnected(), kind);
    EXPECT_EQ(s.status, SolveStatus::kInfeasible);
    EXPECT_FALSE(s.deployment.has_value());
    ASSERT_FALSE(s.infeasibility.empty());
    EXPECT_EQ(s.infeasibility[0].constraint, 2);
    const auto& ids = s.infeasibility[0].indices;
    EXPECT_NE(std::find(ids.begin(), ids.end(), 1), ids.end());
  }
}

TEST(Solve, UnreachablePointIsReportedDirectly) {
  Instance inst = MakeT1();
  inst.travel_time(1, 0) = 99;
  inst.travel_time(1, 1) = 99;
  const Solution s = SolveZero(inst, ModelKind::kRp);
  ASSERT_EQ(s.status, SolveStatus::kInfeasible);
  ASSERT_EQ(s.infeasibility.size(), 1u);
  EXPECT_EQ(s.infeasibility[0].constraint, 2);
  EXPECT_EQ(s.infeasibility[0].indices, (std::vector<int>{2}));
}

TEST(Solve, ProportionalInfeasibility) {
  Instance inst = MakeT1();
  inst.alpha = 0.9;
  const Solution s = SolveZero(inst, ModelKind::kDrp);
  ASSERT_EQ(s.status, SolveStatus::kInfeasible);
  ASSERT_FALSE(s.infeasibility.empty());
  EXPECT_EQ(s.infeasibility.back().constraint, 12);
}

TEST(Solve, CapacityShortfall) {
  Instance inst = testing::MakeT1Pair();
  inst.stations = {{1}, {0}};
  const Solution s = SolveZero(inst, ModelKind::kRp);
  ASSERT_EQ(s.status, SolveStatus::kInfeasible);
  ASSERT_FALSE(s.infeasibility.empty());
  EXPECT_EQ(s.infeasibility[0].constraint, 7);
}

TEST(Solve, AgreesWithIndependentOracle) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Instance inst = testing::RandomInstance(seed, {5, 4, 3});
    const PenaltyMatrix m = testing::RandomPenalties(inst, seed);
    const auto cov = BuildCoverageMatrices(inst);
    for (ModelKind kind : kKinds) {
      const Solution s = Solve(inst, cov, m, kind);
      const testing::OracleOptimum o = testing::OracleSolve(inst, m, kind, true);
      ASSERT_EQ(s.status == SolveStatus::kOptimal, o.feasible) << "seed " << seed;
      if (!o.feasible) continue;
      EXPECT_NEAR(s.objective(), o.objective, 1e-9) << "seed " << seed;
      EXPECT_EQ(s.deployment->stations(), o.station_of) << "seed " << seed;
    }
  }
}

TEST(Solve, AgreesWithBruteForce) {
  for (std::uint64_t seed = 1000; seed < 1150; ++seed) {
    const Instance inst = testing::RandomInstance(seed);
    const PenaltyMatrix m = testing::RandomPenalties(inst, seed);
    const auto cov = BuildCoverageMatrices(inst);
    for (ModelKind kind : kKinds) {
      const Solution s = Solve(inst, cov, m, kind);
      const Solution b = BruteForce(inst, cov, m, kind);
      ASSERT_EQ(s.status, b.status) << "seed " << seed;
      if (s.status != SolveStatus::kOptimal) continue;
      EXPECT_NEAR(s.objective(), b.objective(), 1e-9);
      EXPECT_EQ(s.deployment, b.deployment);
      EXPECT_TRUE(s.evaluation->feasible);
    }
  }
}

TEST(Solve, PruningAndSymmetryNeverChangeTheOptimum) {
  for (std::uint64_t seed = 2000; seed < 2100; ++seed) {
    const Instance inst = testing::RandomInstance(seed);
    const PenaltyMatrix m = testing::RandomPenalties(inst, seed);
    const auto cov = BuildCoverageMatrices(inst);
    for (ModelKind kind : kKinds) {
      const Solution full = Solve(inst, cov, m, kind);
      for (int variant = 0; variant < 4; ++variant) {
        SolverConfig config;
        config.bound_pruning = (variant & 1) != 0;
        config.symmetry_breaking = (variant & 2) != 0;
        config.feasibility_pruning = variant != 0;
        const Solution other = Solve(inst, cov, m, kind, config);
        ASSERT_EQ(other.status, full.status) << "seed " << seed;
        if (full.status != SolveStatus::kOptimal) continue;
        EXPECT_NEAR(other.objective(), full.objective(), 1e-9);
        EXPECT_EQ(other.deployment, full.deployment);
      }
    }
  }
}

TEST(Solve, AlphaMonotone) {
  for (std::uint64_t seed = 3000; seed < 3060; ++seed) {
    Instance inst = testing::RandomInstance(seed);
    const PenaltyMatrix m = testing::RandomPenalties(inst, seed);
    const auto cov = BuildCoverageMatrices(inst);
    for (ModelKind kind : kKinds) {
      bool was_infeasible = false;
      double previous = std::numeric_limits<double>::infinity();
      for (int step = 0; step <= 20; ++step) {
        inst.alpha = step * 0.05;
        const Solution s = Solve(inst, cov, m, kind);
        if (was_infeasible) {
          EXPECT_EQ(s.status, SolveStatus::kInfeasible) << "seed " << seed;
        }
        if (s.status == SolveStatus::kInfeasible) {
          was_infeasible = true;
          continue;
        }
        EXPECT_LE(s.objective(), previous + 1e-9);
        previous = s.objective();
      }
    }
  }
}

TEST(Solve, ScalingDemandsKeepsTheArgmax) {
  for (std::uint64_t seed = 4000; seed < 4060; ++seed) {
    const Instance inst = testing::RandomInstance(seed, {5, 4, 3});
    const Instance scaled = ScaleDemands(inst, 7.3);
    for (ModelKind kind : kKinds) {
      const auto a = testing::OracleSolve(inst, Zero(inst), kind, false);
      const auto b = testing::OracleSolve(scaled, Zero(scaled), kind, false);
      EXPECT_EQ(a.optimal_set, b.optimal_set) << "seed " << seed;
      const Solution sa = SolveZero(inst, kind);
      const Solution sb = SolveZero(scaled, kind);
      ASSERT_EQ(sa.status, sb.status);
      if (sa.status == SolveStatus::kOptimal) {
        EXPECT_EQ(sa.deployment, sb.deployment);
      }
    }
  }
}

TEST(Solve, Deterministic) {
  const Instance inst = GenerateCaseInstance(7);
  const Solution a = SolveZero(inst, ModelKind::kDrp);
  const Solution b = SolveZero(inst, ModelKind::kDrp);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.deployment, b.deployment);
  EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  EXPECT_EQ(a.objective(), b.objective());
}

TEST(Solve, NodeLimit) {
  const Instance inst = GenerateCaseInstance(7);
  SolverConfig config;
  config.node_limit = 50;
  const Solution s = SolveZero(inst, ModelKind::kRp, config);
  EXPECT_EQ(s.status, SolveStatus::kLimitReached);
  EXPECT_LE(s.nodes_explored, 51);
  if (s.deployment) {
    EXPECT_TRUE(s.evaluation->feasible);
    EXPECT_GE(s.best_bound, s.objective() - 1e-9);
  }
  const Solution exact = SolveZero(inst, ModelKind::kRp);
  ASSERT_EQ(exact.status, SolveStatus::kOptimal);
  EXPECT_GE(s.best_bound, exact.objective() - 1e-9);
}

TEST(Solve, DimensionMismatchThrows) {
  const Instance inst = MakeT1();
  EXPECT_THROW(Solve(inst, BuildCoverageMatrices(inst),
                     PenaltyMatrix::Zero(2, 3), ModelKind::kRp),
               DimensionError);
}

TEST(BruteForce, SizeGuard) {
  Instance inst = MakeT1();
  inst.stations.assign(11, Station{7});
  inst.ambulances.assign(7, Ambulance{0});
  inst.travel_time = DenseMatrix<double>(2, 11, 1.0);
  inst.station_distance = DenseMatrix<double>(11, 11, 0.0);
  EXPECT_THROW(BruteForce(inst, BuildCoverageMatrices(inst), Zero(inst),
                          ModelKind::kRp),
               SizeGuardError);
}

TEST(BruteForce, EquivalentStationsGiveEqualObjectives) {
  Instance inst = testing::RandomInstance(11, {6, 1, 3});
  // Replicate the single station three times.
  const auto column = inst.travel_time;
  inst.travel_time = DenseMatrix<double>(inst.num_points(), 3);
  for (std::size_t i = 0; i < inst.num_points(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) inst.travel_time(i, j) = column(i, 0);
  }
  inst.stations.assign(3, Station{3});
  inst.station_distance = DenseMatrix<double>(3, 3, 0.0);
  const auto cov = BuildCoverageMatrices(inst);
  for (ModelKind kind : kKinds) {
    std::map<std::vector<int>, double> by_multiset;
    testing::ForEachDeployment(3, inst.fleet_size(), [&](const std::vector<int>& s) {
      std::vector<int> key = s;
      std::sort(key.begin(), key.end());
      const double obj =
          EvaluateDeployment(inst, cov, Deployment(s), Zero(inst), kind).objective;
      const auto [it, inserted] = by_multiset.emplace(key, obj);
      if (!inserted) EXPECT_EQ(it->second, obj);
    });
  }
}

TEST(BruteForce, ZeroAlphaAndFullReachMakeEveryDeploymentFeasible) {
  Instance inst = testing::RandomInstance(5);
  inst.alpha = 0.0;
  inst.travel_time = DenseMatrix<double>(inst.num_points(), inst.num_stations(), 15.0);
  const auto cov = BuildCoverageMatrices(inst);
  for (ModelKind kind : kKinds) {
    testing::ForEachDeployment(
        inst.num_stations(), inst.fleet_size(), [&](const std::vector<int>& s) {
          if (!CheckDeployment(inst, Deployment(s)).ok()) return;
          EXPECT_TRUE(
              EvaluateDeployment(inst, cov, Deployment(s), Zero(inst), kind).feasible);
        });
    EXPECT_EQ(BruteForce(inst, cov, Zero(inst), kind).status, SolveStatus::kOptimal);
  }
}

TEST(NodeBound, RootWithoutPenaltiesIsFullCoverageValue) {
  const Instance inst = MakeT1();
  const auto cov = BuildCoverageMatrices(inst);
  const SearchModel rp(inst, cov, Zero(inst), ModelKind::kRp);
  EXPECT_DOUBLE_EQ(NodeBound(rp, rp.Root()), 5.0);
  const SearchModel drp(inst, cov, Zero(inst), ModelKind::kDrp);
  EXPECT_DOUBLE_EQ(NodeBound(drp, drp.Root()), 7.0);
}

TEST(NodeBound, CompleteFullyDoubleCoveredAssignmentIsExact) {
  Instance inst = testing::MakeT1Pair();
  inst.travel_time = DenseMatrix<double>::FromRows({{1, 1}, {1, 1}});
  const auto cov = BuildCoverageMatrices(inst);
  const PenaltyMatrix m(DenseMatrix<double>::FromRows({{0.25, 1.0}, {0.5, 0.0}}));
  for (ModelKind kind : kKinds) {
    const SearchModel model(inst, cov, m, kind);
    PartialAssignment p = model.Root();
    model.Push(p, 0);
    model.Push(p, 1);
    const double exact =
        EvaluateDeployment(inst, cov, Deployment({0, 1}), m, kind).objective;
    for (BoundKind b : {BoundKind::kCeiling, BoundKind::kMarginal, BoundKind::kCombined}) {
      EXPECT_DOUBLE_EQ(NodeBound(model, p, b), exact);
    }
  }
}

// Bound of a random partial state is never below the best objective over its
// capacity-respecting completions, feasible or not.
TEST(NodeBound, AdmissibleOnRandomPartialStates) {
  for (std::uint64_t seed = 5000; seed < 5150; ++seed) {
    const Instance inst = testing::RandomInstance(seed);
    const PenaltyMatrix m = testing::RandomPenalties(inst, seed);
    const auto cov = BuildCoverageMatrices(inst);
    const std::size_t fleet = inst.fleet_size();
    for (ModelKind kind : kKinds) {
      const SearchModel model(inst, cov, m, kind);
      testing::ForEachDeployment(inst.num_stations(), fleet, [&](const std::vector<int>& s) {
        if (!CheckDeployment(inst, Deployment(s)).ok()) return;
        const double obj =
            EvaluateDeployment(inst, cov, Deployment(s), m, kind).objective;
        PartialAssignment p = model.Root();
        for (std::size_t depth = 0; depth <= fleet; ++depth) {
          for (BoundKind b : {BoundKind::kCeiling, BoundKind::kMarginal,
                              BoundKind::kCombined}) {
            EXPECT_GE(NodeBound(model, p, b), obj - 1e-9)
                << "seed " << seed << " depth " << depth;
          }
          if (depth < fleet) model.Push(p, s[depth]);
        }
      });
    }
  }
}

TEST(SearchModel, LeafMatchesEvaluation) {
  for (std::uint64_t seed = 6000; seed < 6050; ++seed) {
    const Instance inst = testing::RandomInstance(seed);
    const PenaltyMatrix m = testing::RandomPenalties(inst, seed);
    const auto cov = BuildCoverageMatrices(inst);
    for (ModelKind kind : kKinds) {
      const SearchModel model(inst, cov, m, kind);
      testing::ForEachDeployment(
          inst.num_stations(), inst.fleet_size(), [&](const std::vector<int>& s) {
            if (!CheckDeployment(inst, Deployment(s)).ok()) return;
            PartialAssignment p = model.Root();
            for (int j : s) model.Push(p, j);
            const Evaluation e = EvaluateDeployment(inst, cov, Deployment(s), m, kind);
            EXPECT_EQ(model.LeafFeasible(p), e.feasible);
            EXPECT_EQ(model.LeafObjective(p), e.objective);
            while (p.depth() > 0) model.Pop(p);
            EXPECT_EQ(p.c1, std::vector<int>(inst.num_points(), 0));
          });
    }
  }
}

}  // namespace
}  // namespace emsreloc
