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

#include "emsreloc/coverage.h"

#include <fmt/format.h>

#include "emsreloc/errors.h"

namespace emsreloc {

CoverageMatrices::CoverageMatrices(std::size_t num_points,
                                   std::size_t num_stations)
    : num_points_(num_points),
      gamma_(num_stations, PointSet(num_points)),
      delta_(num_stations, PointSet(num_points)) {}

CoverageMatrices CoverageMatrices::FromRows(
    const std::vector<std::vector<int>>& gamma,
    const std::vector<std::vector<int>>& delta) {
  if (gamma.size() != delta.size()) {
    throw DimensionError("gamma and delta have different row counts");
  }
  const std::size_t m = gamma.empty() ? 0 : gamma.front().size();
  CoverageMatrices out(gamma.size(), m);
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i].size() != m || delta[i].size() != m) {
      throw DimensionError(fmt::format("coverage row {} is ragged", i + 1));
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (gamma[i][j] && !delta[i][j]) {
        throw Error(fmt::format(
            "gamma[{0}][{1}] set without delta[{0}][{1}]", i + 1, j + 1));
      }
      out.Set(i, j, gamma[i][j] != 0, delta[i][j] != 0);
    }
  }
  return out;
}

void CoverageMatrices::Set(std::size_t point, std::size_t station,
                           bool within_r1, bool within_r2) {
  gamma_[station][point] = within_r1;
  delta_[station][point] = within_r2;
}

CoverageMatrices BuildCoverageMatrices(const DenseMatrix<double>& travel_time,
                                       double r1, double r2) {
  if (!(r1 < r2)) {
    throw ThresholdOrderError(
        fmt::format("r1 < r2 required (r1={}, r2={})", r1, r2));
  }
  CoverageMatrices out(travel_time.rows(), travel_time.cols());
  for (std::size_t i = 0; i < travel_time.rows(); ++i) {
    for (std::size_t j = 0; j < travel_time.cols(); ++j) {
      const double t = travel_time(i, j);
      out.Set(i, j, t <= r1, t <= r2);
    }
  }
  return out;
}

CoverageMatrices BuildCoverageMatrices(const Instance& instance) {
  return BuildCoverageMatrices(instance.travel_time, instance.r1, instance.r2);
}

void AccumulateColumn(const PointSet& column, int weight,
                      std::vector<int>& counts) {
  for (auto i = column.find_first(); i != PointSet::npos;
       i = column.find_next(i)) {
    counts[i] += weight;
  }
}

CoverageCounts CountCoverage(const CoverageMatrices& coverage,
                             const Deployment& deployment) {
  const std::size_t m = coverage.num_stations();
  for (std::size_t k = 0; k < deployment.fleet_size(); ++k) {
    const int j = deployment.station_of(k);
    if (j < 0 || static_cast<std::size_t>(j) >= m) {
      throw DimensionError(fmt::format(
          "ambulance {} assigned to station {} outside 1..{}", k + 1, j + 1,
          m));
    }
  }
  CoverageCounts counts{std::vector<int>(coverage.num_points(), 0),
                        std::vector<int>(coverage.num_points(), 0)};
  const std::vector<int> loads = deployment.Loads(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (loads[j] == 0) continue;
    AccumulateColumn(coverage.gamma_column(j), loads[j], counts.c1);
    AccumulateColumn(coverage.delta_column(j), loads[j], counts.c2);
  }
  return counts;
}

}  // namespace emsreloc
