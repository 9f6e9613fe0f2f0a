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

#include "emsreloc/sweep.h"

#include <sstream>

#include <gtest/gtest.h>

#include "emsreloc/errors.h"
#include "emsreloc/generator.h"
#include "test_util.h"

namespace emsreloc {
namespace {

constexpr ModelKind kBoth[] = {ModelKind::kRp, ModelKind::kDrp};

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

TEST(AlphaGrid, DefaultHasElevenPoints) {
  const std::vector<double> grid = DefaultAlphaGrid();
  ASSERT_EQ(grid.size(), 11u);
  EXPECT_EQ(grid.front(), 0.9);
  EXPECT_EQ(grid.back(), 1.0);
  EXPECT_EQ(grid[3], 0.93);
}

TEST(AlphaGrid, Parsing) {
  EXPECT_EQ(ParseAlphaGrid("0.9:1:0.05"), (std::vector<double>{0.9, 0.95, 1.0}));
  EXPECT_EQ(ParseAlphaGrid("0.5,0.7, 0.9"), (std::vector<double>{0.5, 0.7, 0.9}));
  EXPECT_EQ(ParseAlphaGrid("0.5"), (std::vector<double>{0.5}));
  EXPECT_THROW(ParseAlphaGrid("0.9:1"), Error);
  EXPECT_THROW(ParseAlphaGrid("a,b"), Error);
  EXPECT_THROW(AlphaGrid(1.0, 0.9, 0.01), Error);
  EXPECT_THROW(AlphaGrid(0.9, 1.0, 0.0), Error);
}

TEST(AlphaSweep, T1BothKinds) {
  const double grid[] = {0.5};
  const std::vector<SweepRow> rows =
      AlphaSweep(testing::MakeT1(), kBoth, grid, std::nullopt);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].model, ModelKind::kRp);
  EXPECT_EQ(rows[1].model, ModelKind::kDrp);
  EXPECT_EQ(rows[1].status, SolveStatus::kOptimal);
  EXPECT_DOUBLE_EQ(rows[1].objective, 3.0);
  EXPECT_EQ(rows[1].single_covered, 1);
  EXPECT_EQ(rows[1].double_covered, 0);
}

TEST(AlphaSweep, UnattainableAlphaIsInfeasible) {
  const double grid[] = {0.5, 0.7, 1.0};
  const std::vector<SweepRow> rows =
      AlphaSweep(testing::MakeT1(), kBoth, grid, std::nullopt);
  for (const SweepRow& row : rows) {
    EXPECT_EQ(row.status == SolveStatus::kInfeasible, row.alpha > 0.6);
    EXPECT_EQ(row.has_deployment, row.status == SolveStatus::kOptimal);
  }
}

TEST(AlphaSweep, DeterministicAcrossJobCounts) {
  const Instance inst = GenerateCaseInstance(5);
  const std::vector<double> grid = AlphaGrid(0.9, 1.0, 0.05);
  SweepConfig parallel;
  parallel.jobs = 3;
  const auto a = AlphaSweep(inst, kBoth, grid, std::nullopt);
  const auto b = AlphaSweep(inst, kBoth, grid, std::nullopt);
  const auto c = AlphaSweep(inst, kBoth, grid, std::nullopt, parallel);
  EXPECT_EQ(ResultsCsvWithoutTiming(a), ResultsCsvWithoutTiming(b));
  EXPECT_EQ(ResultsCsvWithoutTiming(a), ResultsCsvWithoutTiming(c));
}

TEST(AlphaSweep, CountsMatchEvaluation) {
  const Instance inst = GenerateCaseInstance(6);
  const auto rows = AlphaSweep(inst, kBoth, DefaultAlphaGrid(), std::nullopt);
  ASSERT_EQ(rows.size(), 22u);
  for (const SweepRow& row : rows) {
    EXPECT_LE(row.double_covered, row.single_covered);
    EXPECT_LE(row.single_covered, 47);
  }
}

TEST(CompareReport, T1) {
  const double grid[] = {0.5};
  const auto rows = AlphaSweep(testing::MakeT1(), kBoth, grid, std::nullopt);
  const auto table = CompareReport(rows);
  ASSERT_EQ(table.size(), 1u);
  EXPECT_EQ(table[0].baseline_single, 1);
  EXPECT_EQ(table[0].candidate_single, 1);
  EXPECT_EQ(table[0].delta_single, 1 - table[0].baseline_single);
  EXPECT_EQ(table[0].delta_double, 0);
}

TEST(CompareReport, SelfComparisonHasZeroDeltas) {
  const Instance inst = GenerateCaseInstance(5);
  const auto rows = AlphaSweep(inst, kBoth, AlphaGrid(0.9, 1.0, 0.05), std::nullopt);
  for (const ComparisonRow& r : CompareReport(rows, ModelKind::kDrp, ModelKind::kDrp)) {
    if (!r.delta_single) continue;
    EXPECT_EQ(*r.delta_single, 0);
    EXPECT_EQ(*r.delta_double, 0);
  }
}

TEST(CompareReport, EmptyAndMismatched) {
  EXPECT_TRUE(CompareReport(std::vector<SweepRow>{}).empty());
  const double rp_grid[] = {0.5};
  const double drp_grid[] = {0.6};
  const ModelKind rp[] = {ModelKind::kRp};
  const ModelKind drp[] = {ModelKind::kDrp};
  auto rows = AlphaSweep(testing::MakeT1(), rp, rp_grid, std::nullopt);
  const auto more = AlphaSweep(testing::MakeT1(), drp, drp_grid, std::nullopt);
  rows.insert(rows.end(), more.begin(), more.end());
  EXPECT_THROW(CompareReport(rows), Error);
}

TEST(ResultsCsv, T1DrpLine) {
  const double grid[] = {0.5};
  const ModelKind drp[] = {ModelKind::kDrp};
  const auto rows = AlphaSweep(testing::MakeT1(), drp, grid, std::nullopt);
  const auto lines = Lines(ResultsCsv(rows));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], kResultsCsvHeader);
  EXPECT_EQ(lines[1].rfind("1,DRP,0.50,Optimal,3.000000,1,0,0.000000,", 0), 0u)
      << lines[1];
  EXPECT_EQ(Lines(ResultsCsvWithoutTiming(rows))[1],
            "1,DRP,0.50,Optimal,3.000000,1,0,0.000000");
}

TEST(ResultsCsv, EmptyIsHeaderOnly) {
  EXPECT_EQ(ResultsCsv({}), std::string(kResultsCsvHeader) + "\n");
}

TEST(ResultsCsv, InfeasibleRowsLeaveValuesEmpty) {
  const double grid[] = {1.0};
  const ModelKind rp[] = {ModelKind::kRp};
  const auto rows = AlphaSweep(testing::MakeT1(), rp, grid, std::nullopt);
  EXPECT_EQ(Lines(ResultsCsvWithoutTiming(rows))[1], "1,RP,1.00,Infeasible,,,,");
}

TEST(ComparisonCsv, Format) {
  const double grid[] = {0.5, 1.0};
  const auto rows = AlphaSweep(testing::MakeT1(), kBoth, grid, std::nullopt);
  const auto lines = Lines(ComparisonCsv(CompareReport(rows)));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[1], "1,0.50,Optimal,Optimal,1,1,0,0,0,0");
  EXPECT_EQ(lines[2], "1,1.00,Infeasible,Infeasible,0,0,,0,0,");
}

TEST(DeploymentsCsv, BusyAmbulancesHaveNoStation) {
  PeriodDeployment d{2, ModelKind::kRp, 0.9, {0, -1, 3}};
  EXPECT_EQ(DeploymentsCsv(std::vector<PeriodDeployment>{d}),
            "period,model,operating_alpha,ambulance,station\n"
            "2,RP,0.90,1,1\n2,RP,0.90,2,\n2,RP,0.90,3,4\n");
}

}  // namespace
}  // namespace emsreloc
