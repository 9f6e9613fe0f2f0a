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

#include "emsreloc/milp.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "emsreloc/errors.h"

namespace emsreloc {
namespace {

constexpr int kTermsPerLine = 8;
constexpr int kNamesPerLine = 10;

std::string FormatNumber(double v) { return fmt::format("{}", v); }

void WriteTerms(std::ostream& out, const LinearProgram& lp,
                const std::vector<LpTerm>& terms, int placeholder) {
  if (terms.empty()) {
    out << "0 " << lp.variables[placeholder].name;
    return;
  }
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const double c = terms[t].coefficient;
    const double mag = std::abs(c);
    if (t > 0) {
      out << (t % kTermsPerLine == 0 ? "\n   " : " ");
      out << (c < 0 ? "- " : "+ ");
    } else if (c < 0) {
      out << "- ";
    }
    if (mag != 1.0) out << FormatNumber(mag) << ' ';
    out << lp.variables[terms[t].variable].name;
  }
}

const char* SenseText(RowSense sense) {
  switch (sense) {
    case RowSense::kGreaterEqual:
      return ">=";
    case RowSense::kLessEqual:
      return "<=";
    case RowSense::kEqual:
      return "=";
  }
  return "=";
}

}  // namespace

std::size_t LinearProgram::CountRows(int family) const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(),
      [family](const LpRow& r) { return r.family == family; }));
}

std::optional<int> LinearProgram::FindVariable(const std::string& name) const {
  for (std::size_t v = 0; v < variables.size(); ++v) {
    if (variables[v].name == name) return static_cast<int>(v);
  }
  return std::nullopt;
}

LinearProgram BuildMilp(const Instance& instance,
                        const CoverageMatrices& coverage,
                        const PenaltyMatrix& penalties, ModelKind kind) {
  CheckCoverageShape(instance, coverage);
  CheckPenaltyShape(instance, penalties);
  const std::size_t n = instance.num_points();
  const std::size_t m = instance.num_stations();
  const std::size_t fleet = instance.fleet_size();
  const ModelWeights weights = WeightsFor(instance, kind);

  LinearProgram lp;
  lp.name = fmt::format("{} n={} m={} K={} alpha={}", ModelName(kind), n, m,
                        fleet, instance.alpha);
  lp.num_points = n;
  lp.num_stations = m;
  lp.fleet_size = fleet;
  lp.variables.reserve(2 * n + m * fleet);
  for (std::size_t i = 0; i < n; ++i) {
    lp.variables.push_back({fmt::format("x1_{}", i + 1), weights.single[i]});
  }
  for (std::size_t i = 0; i < n; ++i) {
    lp.variables.push_back({fmt::format("x2_{}", i + 1), weights.double_[i]});
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < fleet; ++k) {
      lp.variables.push_back(
          {fmt::format("y_{}_{}", j + 1, k + 1), -penalties(j, k)});
    }
  }

  // (2) absolute coverage within r2.
  for (std::size_t i = 0; i < n; ++i) {
    LpRow row{fmt::format("c2_{}", i + 1), 2, {}, RowSense::kGreaterEqual, 1.0};
    for (std::size_t j = 0; j < m; ++j) {
      if (!coverage.delta(i, j)) continue;
      for (std::size_t k = 0; k < fleet; ++k) {
        row.terms.push_back({lp.y(j, k), 1.0});
      }
    }
    lp.rows.push_back(std::move(row));
  }

  // (3) / (12) proportional coverage within r1.
  {
    const int id = ProportionalConstraintId(kind);
    LpRow row{fmt::format("c{}", id), id, {}, RowSense::kGreaterEqual,
              ProportionalTarget(weights, instance.alpha)};
    for (std::size_t i = 0; i < n; ++i) {
      if (weights.proportion[i] != 0.0) {
        row.terms.push_back({lp.x1(i), weights.proportion[i]});
      }
    }
    lp.rows.push_back(std::move(row));
  }

  // (4) sum gamma_ij y_jk >= x1_i + x2_i.
  for (std::size_t i = 0; i < n; ++i) {
    LpRow row{fmt::format("c4_{}", i + 1), 4, {}, RowSense::kGreaterEqual, 0.0};
    for (std::size_t j = 0; j < m; ++j) {
      if (!coverage.gamma(i, j)) continue;
      for (std::size_t k = 0; k < fleet; ++k) {
        row.terms.push_back({lp.y(j, k), 1.0});
      }
    }
    row.terms.push_back({lp.x1(i), -1.0});
    row.terms.push_back({lp.x2(i), -1.0});
    lp.rows.push_back(std::move(row));
  }

  // (5) x1_i >= x2_i.
  for (std::size_t i = 0; i < n; ++i) {
    lp.rows.push_back({fmt::format("c5_{}", i + 1),
                       5,
                       {{lp.x1(i), 1.0}, {lp.x2(i), -1.0}},
                       RowSense::kGreaterEqual,
                       0.0});
  }

  // (6) every ambulance at exactly one station.
  for (std::size_t k = 0; k < fleet; ++k) {
    LpRow row{fmt::format("c6_{}", k + 1), 6, {}, RowSense::kEqual, 1.0};
    for (std::size_t j = 0; j < m; ++j) row.terms.push_back({lp.y(j, k), 1.0});
    lp.rows.push_back(std::move(row));
  }

  // (7) station capacities.
  for (std::size_t j = 0; j < m; ++j) {
    LpRow row{fmt::format("c7_{}", j + 1), 7, {}, RowSense::kLessEqual,
              static_cast<double>(instance.stations[j].capacity)};
    for (std::size_t k = 0; k < fleet; ++k) {
      row.terms.push_back({lp.y(j, k), 1.0});
    }
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

void ExportLp(const LinearProgram& lp, std::ostream& out) {
  out << "\\ " << lp.name << '\n';
  out << "Maximize\n obj: ";
  std::vector<LpTerm> objective;
  for (std::size_t v = 0; v < lp.variables.size(); ++v) {
    if (lp.variables[v].objective != 0.0) {
      objective.push_back({static_cast<int>(v), lp.variables[v].objective});
    }
  }
  if (lp.variables.empty()) {
    out << "0";
  } else {
    WriteTerms(out, lp, objective, 0);
  }
  out << "\nSubject To\n";
  for (const LpRow& row : lp.rows) {
    out << ' ' << row.name << ": ";
    if (lp.variables.empty()) {
      out << "0";
    } else {
      WriteTerms(out, lp, row.terms, 0);
    }
    out << ' ' << SenseText(row.sense) << ' ' << FormatNumber(row.rhs) << '\n';
  }
  out << "Binary\n";
  for (std::size_t v = 0; v < lp.variables.size(); ++v) {
    out << ' ' << lp.variables[v].name;
    if (v % kNamesPerLine == kNamesPerLine - 1 || v + 1 == lp.variables.size()) {
      out << '\n';
    }
  }
  out << "End\n";
}

std::string ExportLp(const LinearProgram& lp) {
  std::ostringstream out;
  ExportLp(lp, out);
  return out.str();
}

void ExportLpFile(const LinearProgram& lp, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  ExportLp(lp, file);
  file.flush();
  if (!file) throw IoError("failed writing " + path);
}

std::vector<double> AssignmentFor(const LinearProgram& lp,
                                  const CoverageMatrices& coverage,
                                  const Deployment& deployment) {
  if (deployment.fleet_size() != lp.fleet_size) {
    throw DimensionError("deployment size does not match the program's fleet");
  }
  std::vector<double> values(lp.variables.size(), 0.0);
  const CoverageCounts counts = CountCoverage(coverage, deployment);
  const CoverageDecision x = GreedyCoverageDecision(counts.c1);
  for (std::size_t i = 0; i < lp.num_points; ++i) {
    values[lp.x1(i)] = x.x1[i] ? 1.0 : 0.0;
    values[lp.x2(i)] = x.x2[i] ? 1.0 : 0.0;
  }
  for (std::size_t k = 0; k < deployment.fleet_size(); ++k) {
    values[lp.y(deployment.station_of(k), k)] = 1.0;
  }
  return values;
}

double ObjectiveValue(const LinearProgram& lp,
                      const std::vector<double>& values) {
  double total = 0.0;
  for (std::size_t v = 0; v < lp.variables.size(); ++v) {
    total += lp.variables[v].objective * values[v];
  }
  return total;
}

std::vector<std::string> ViolatedRows(const LinearProgram& lp,
                                      const std::vector<double>& values,
                                      double tol) {
  std::vector<std::string> out;
  for (const LpRow& row : lp.rows) {
    double lhs = 0.0;
    for (const LpTerm& t : row.terms) lhs += t.coefficient * values[t.variable];
    const double slack = tol * std::max(1.0, std::abs(row.rhs));
    bool ok = true;
    switch (row.sense) {
      case RowSense::kGreaterEqual:
        ok = lhs >= row.rhs - slack;
        break;
      case RowSense::kLessEqual:
        ok = lhs <= row.rhs + slack;
        break;
      case RowSense::kEqual:
        ok = std::abs(lhs - row.rhs) <= slack;
        break;
    }
    if (!ok) out.push_back(row.name);
  }
  return out;
}

}  // namespace emsreloc
