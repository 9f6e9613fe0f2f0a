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

#ifndef EMSRELOC_COVERAGE_H_
#define EMSRELOC_COVERAGE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "emsreloc/instance.h"
#include "emsreloc/matrix.h"

namespace emsreloc {

// Set of demand points, one bit per point.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

// Accessibility within r1 (gamma) and r2 (delta), stored column-wise: one
// PointSet per station listing the points it reaches.
class CoverageMatrices {
 public:
  CoverageMatrices() = default;
  CoverageMatrices(std::size_t num_points, std::size_t num_stations);

  // Builds from explicit n x m boolean rows. Throws DimensionError on shape
  // mismatch and Error when gamma[i][j] holds without delta[i][j].
  static CoverageMatrices FromRows(const std::vector<std::vector<int>>& gamma,
                                   const std::vector<std::vector<int>>& delta);

  std::size_t num_points() const { return num_points_; }
  std::size_t num_stations() const { return gamma_.size(); }

  bool gamma(std::size_t point, std::size_t station) const {
    return gamma_[station].test(point);
  }
  bool delta(std::size_t point, std::size_t station) const {
    return delta_[station].test(point);
  }
  const PointSet& gamma_column(std::size_t station) const {
    return gamma_[station];
  }
  const PointSet& delta_column(std::size_t station) const {
    return delta_[station];
  }

  void Set(std::size_t point, std::size_t station, bool within_r1,
           bool within_r2);

  bool operator==(const CoverageMatrices&) const = default;

 private:
  std::size_t num_points_ = 0;
  std::vector<PointSet> gamma_;
  std::vector<PointSet> delta_;
};

// gamma[i][j] = t[i][j] <= r1, delta[i][j] = t[i][j] <= r2. Throws
// ThresholdOrderError unless r1 < r2.
CoverageMatrices BuildCoverageMatrices(const DenseMatrix<double>& travel_time,
                                       double r1, double r2);
CoverageMatrices BuildCoverageMatrices(const Instance& instance);

// Per-point count of ambulances within r1 (c1) and within r2 (c2).
struct CoverageCounts {
  std::vector<int> c1;
  std::vector<int> c2;

  bool operator==(const CoverageCounts&) const = default;
};

// Throws DimensionError if a deployment entry is not a station index.
CoverageCounts CountCoverage(const CoverageMatrices& coverage,
                             const Deployment& deployment);

// Adds `weight` to counts[i] for every point i in `column`.
void AccumulateColumn(const PointSet& column, int weight,
                      std::vector<int>& counts);

}  // namespace emsreloc

#endif  // EMSRELOC_COVERAGE_H_
