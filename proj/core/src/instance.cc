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

#include "emsreloc/instance.h"

#include <cmath>
#include <string>
#include <utility>

#include <fmt/format.h>

namespace emsreloc {
namespace {

void AddError(ValidationReport& report, std::string code, std::string message) {
  report.issues.push_back({ValidationIssue::Severity::kError, std::move(code),
                           std::move(message)});
}

void AddWarning(ValidationReport& report, std::string code,
                std::string message) {
  report.issues.push_back({ValidationIssue::Severity::kWarning,
                           std::move(code), std::move(message)});
}

bool FiniteNonNegative(double v) { return std::isfinite(v) && v >= 0.0; }

void CheckMatrix(ValidationReport& report, const DenseMatrix<double>& matrix,
                 std::string_view name, std::size_t rows, std::size_t cols) {
  if (matrix.rows() != rows || matrix.cols() != cols) {
    AddError(report, "dimension",
             fmt::format("{} is {}x{}, expected {}x{}", name, matrix.rows(),
                         matrix.cols(), rows, cols));
    return;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!FiniteNonNegative(matrix(r, c))) {
        AddError(report, "matrix_entry",
                 fmt::format("{}[{}][{}] = {} must be finite and >= 0", name,
                             r + 1, c + 1, matrix(r, c)));
      }
    }
  }
}

}  // namespace

PenaltyMatrix::PenaltyMatrix(DenseMatrix<double> values)
    : values_(std::move(values)) {
  for (std::size_t j = 0; j < values_.rows(); ++j) {
    for (std::size_t k = 0; k < values_.cols(); ++k) {
      if (!FiniteNonNegative(values_(j, k))) {
        throw Error(fmt::format(
            "penalty M[{}][{}] = {} must be finite and >= 0", j + 1, k + 1,
            values_(j, k)));
      }
    }
  }
}

bool PenaltyMatrix::SameColumn(std::size_t a, std::size_t b) const {
  for (std::size_t j = 0; j < values_.rows(); ++j) {
    if (values_(j, a) != values_(j, b)) return false;
  }
  return true;
}

std::vector<int> Deployment::Loads(std::size_t num_stations) const {
  std::vector<int> loads(num_stations, 0);
  for (int j : station_of_) {
    if (j >= 0 && static_cast<std::size_t>(j) < num_stations) ++loads[j];
  }
  return loads;
}

bool ValidationReport::ok() const {
  for (const auto& issue : issues) {
    if (issue.severity == ValidationIssue::Severity::kError) return false;
  }
  return true;
}

bool ValidationReport::Has(const std::string& code) const {
  for (const auto& issue : issues) {
    if (issue.code == code) return true;
  }
  return false;
}

std::string ValidationReport::ToString() const {
  std::string out;
  for (const auto& issue : issues) {
    out += issue.severity == ValidationIssue::Severity::kError ? "error" : "warning";
    out += " [" + issue.code + "]: " + issue.message;
    out += '\n';
  }
  return out;
}

ValidationReport ValidateInstance(const Instance& instance) {
  ValidationReport report;
  const std::size_t n = instance.num_points();
  const std::size_t m = instance.num_stations();

  if (!(instance.r1 > 0.0) || !std::isfinite(instance.r1)) {
    AddError(report, "threshold_positive", "r1 must be a positive real");
  }
  if (!(instance.r2 > 0.0) || !std::isfinite(instance.r2)) {
    AddError(report, "threshold_positive", "r2 must be a positive real");
  }
  if (!(instance.r1 < instance.r2)) {
    AddError(report, "threshold_order",
             fmt::format("r1 < r2 required (r1={}, r2={})", instance.r1,
                         instance.r2));
  }
  if (!(instance.alpha >= 0.0 && instance.alpha <= 1.0)) {
    AddError(report, "alpha_range",
             fmt::format("alpha must lie in [0,1] (alpha={})", instance.alpha));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const DemandPoint& p = instance.points[i];
    if (!FiniteNonNegative(p.d) || !FiniteNonNegative(p.d1) ||
        !FiniteNonNegative(p.d2)) {
      AddError(report, "demand_negative",
               fmt::format("point {}: demands must be finite and >= 0", i + 1));
    } else if (p.d2 > p.d1) {
      AddWarning(report, "d2_exceeds_d1",
                 fmt::format("point {}: d2={} exceeds d1={}", i + 1, p.d2,
                             p.d1));
    }
  }

  long long total_capacity = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const int u = instance.stations[j].capacity;
    if (u < 0) {
      AddError(report, "capacity_negative",
               fmt::format("station {}: capacity {} < 0", j + 1, u));
    } else {
      total_capacity += u;
    }
  }
  if (total_capacity < static_cast<long long>(instance.fleet_size())) {
    AddError(report, "insufficient_capacity",
             fmt::format("insufficient total capacity: sum of U_j = {} < "
                         "fleet size {}",
                         total_capacity, instance.fleet_size()));
  }

  for (std::size_t k = 0; k < instance.fleet_size(); ++k) {
    const int home = instance.ambulances[k].home_station;
    if (home < 0 || static_cast<std::size_t>(home) >= m) {
      AddError(report, "home_station",
               fmt::format("ambulance {}: home station {} is not in 1..{}",
                           k + 1, home + 1, m));
    }
  }

  CheckMatrix(report, instance.travel_time, "travel_time", n, m);
  CheckMatrix(report, instance.station_distance, "station_distance", m, m);
  if (instance.station_distance.rows() == m &&
      instance.station_distance.cols() == m) {
    for (std::size_t a = 0; a < m; ++a) {
      if (instance.station_distance(a, a) != 0.0) {
        AddError(report, "distance_diagonal",
                 fmt::format("station_distance[{0}][{0}] must be 0", a + 1));
      }
      for (std::size_t b = a + 1; b < m; ++b) {
        if (instance.station_distance(a, b) !=
            instance.station_distance(b, a)) {
          AddError(report, "distance_symmetry",
                   fmt::format("station_distance is not symmetric at ({}, {})",
                               a + 1, b + 1));
        }
      }
    }
  }
  return report;
}

ValidationReport CheckDeployment(const Instance& instance,
                                 const Deployment& deployment) {
  ValidationReport report;
  const std::size_t m = instance.num_stations();
  if (deployment.fleet_size() != instance.fleet_size()) {
    AddError(report, "constraint_6",
             fmt::format("deployment places {} ambulances, fleet has {}",
                         deployment.fleet_size(), instance.fleet_size()));
  }
  for (std::size_t k = 0; k < deployment.fleet_size(); ++k) {
    const int j = deployment.station_of(k);
    if (j < 0 || static_cast<std::size_t>(j) >= m) {
      AddError(report, "constraint_6",
               fmt::format("ambulance {} assigned to station {} outside 1..{}",
                           k + 1, j + 1, m));
    }
  }
  const std::vector<int> loads = deployment.Loads(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (loads[j] > instance.stations[j].capacity) {
      AddError(report, "constraint_7",
               fmt::format("station {} holds {} ambulances, capacity {}",
                           j + 1, loads[j], instance.stations[j].capacity));
    }
  }
  return report;
}

Instance WithFleet(const Instance& instance,
                   const std::vector<int>& positions) {
  Instance out = instance;
  out.ambulances.clear();
  out.ambulances.reserve(positions.size());
  for (int j : positions) out.ambulances.push_back({j});
  return out;
}

Instance ScaleDemands(const Instance& instance, double factor) {
  Instance out = instance;
  for (auto& p : out.points) {
    p.d *= factor;
    p.d1 *= factor;
    p.d2 *= factor;
  }
  return out;
}

}  // namespace emsreloc
