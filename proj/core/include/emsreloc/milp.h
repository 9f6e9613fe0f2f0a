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

#ifndef EMSRELOC_MILP_H_
#define EMSRELOC_MILP_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "emsreloc/coverage.h"
#include "emsreloc/evaluation.h"
#include "emsreloc/instance.h"

namespace emsreloc {

enum class RowSense { kGreaterEqual, kLessEqual, kEqual };

struct LpTerm {
  int variable = 0;
  double coefficient = 0.0;

  bool operator==(const LpTerm&) const = default;
};

struct LpRow {
  std::string name;
  int family = 0;  // model constraint number this row belongs to
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::kGreaterEqual;
  double rhs = 0.0;

  bool operator==(const LpRow&) const = default;
};

// All variables are binary.
struct LpVariable {
  std::string name;
  double objective = 0.0;

  bool operator==(const LpVariable&) const = default;
};

// Maximization problem over binary variables. Variables are laid out as
// x1_1..x1_n, x2_1..x2_n, then y_j_k with j major.
struct LinearProgram {
  std::string name;
  std::size_t num_points = 0;
  std::size_t num_stations = 0;
  std::size_t fleet_size = 0;
  std::vector<LpVariable> variables;
  std::vector<LpRow> rows;

  int x1(std::size_t point) const { return static_cast<int>(point); }
  int x2(std::size_t point) const {
    return static_cast<int>(num_points + point);
  }
  int y(std::size_t station, std::size_t ambulance) const {
    return static_cast<int>(2 * num_points + station * fleet_size + ambulance);
  }

  std::size_t CountRows(int family) const;
  std::optional<int> FindVariable(const std::string& name) const;

  bool operator==(const LinearProgram&) const = default;
};

// Rows: (2) per point, (3) or (12) once, (4) per point, (5) per point,
// (6) per ambulance, (7) per station. The proportional rhs is alpha * sum of
// the model's proportion weights.
LinearProgram BuildMilp(const Instance& instance,
                        const CoverageMatrices& coverage,
                        const PenaltyMatrix& penalties, ModelKind kind);

// CPLEX LP text. Output is byte-stable for a given program. Zero objective
// coefficients are omitted; rows keep explicit zero-term placeholders when
// they would otherwise be empty.
void ExportLp(const LinearProgram& lp, std::ostream& out);
std::string ExportLp(const LinearProgram& lp);
// Throws IoError when the file cannot be written.
void ExportLpFile(const LinearProgram& lp, const std::string& path);

// 0/1 value for every variable: y from the deployment, x from the greedy
// coverage decision.
std::vector<double> AssignmentFor(const LinearProgram& lp,
                                  const CoverageMatrices& coverage,
                                  const Deployment& deployment);

double ObjectiveValue(const LinearProgram& lp,
                      const std::vector<double>& values);
// Names of rows not satisfied by `values` within absolute tolerance `tol`.
std::vector<std::string> ViolatedRows(const LinearProgram& lp,
                                      const std::vector<double>& values,
                                      double tol = 1e-9);

}  // namespace emsreloc

#endif  // EMSRELOC_MILP_H_
