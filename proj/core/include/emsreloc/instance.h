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

#ifndef EMSRELOC_INSTANCE_H_
#define EMSRELOC_INSTANCE_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "emsreloc/matrix.h"

// Problem data for the dynamic ambulance location models.
//
// Indices are 0-based everywhere in this library. File formats, CLI output
// and violation reports use 1-based ids; conversion happens at those edges.

namespace emsreloc {

// A demand zone. `d` weights double coverage in the RP objective and the
// proportional constraint of RP; `d1`/`d2` are the intensities of simple and
// simultaneous requests used by DRP.
struct DemandPoint {
  double d = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  bool operator==(const DemandPoint&) const = default;
};

struct Station {
  int capacity = 0;  // U_j

  bool operator==(const Station&) const = default;
};

struct Ambulance {
  int home_station = 0;  // position at the start of the horizon

  bool operator==(const Ambulance&) const = default;
};

struct Instance {
  std::vector<DemandPoint> points;
  std::vector<Station> stations;
  std::vector<Ambulance> ambulances;
  DenseMatrix<double> travel_time;       // n x m, minutes from station j to point i
  DenseMatrix<double> station_distance;  // m x m
  double r1 = 0.0;
  double r2 = 0.0;
  double alpha = 0.0;

  std::size_t num_points() const { return points.size(); }
  std::size_t num_stations() const { return stations.size(); }
  std::size_t fleet_size() const { return ambulances.size(); }

  bool operator==(const Instance&) const = default;
};

// Relocation penalties M^t: one row per station, one column per ambulance of
// the fleet being solved.
class PenaltyMatrix {
 public:
  PenaltyMatrix() = default;
  PenaltyMatrix(std::size_t num_stations, std::size_t fleet)
      : values_(num_stations, fleet, 0.0) {}
  // Throws Error on a negative or non-finite entry.
  explicit PenaltyMatrix(DenseMatrix<double> values);

  static PenaltyMatrix Zero(std::size_t num_stations, std::size_t fleet) {
    return PenaltyMatrix(num_stations, fleet);
  }

  std::size_t num_stations() const { return values_.rows(); }
  std::size_t fleet_size() const { return values_.cols(); }
  double operator()(std::size_t station, std::size_t ambulance) const {
    return values_(station, ambulance);
  }
  const DenseMatrix<double>& values() const { return values_; }

  // True when ambulances a and b see bitwise identical penalty columns.
  bool SameColumn(std::size_t a, std::size_t b) const;

  bool operator==(const PenaltyMatrix&) const = default;

 private:
  DenseMatrix<double> values_;
};

// Assignment of every ambulance to one station; station_of[k] = j encodes
// y_jk = 1. Constraint (6) holds by construction of the encoding; capacity
// (constraint 7) and index ranges are checked by CheckDeployment.
class Deployment {
 public:
  Deployment() = default;
  explicit Deployment(std::vector<int> station_of)
      : station_of_(std::move(station_of)) {}

  std::size_t fleet_size() const { return station_of_.size(); }
  int station_of(std::size_t ambulance) const { return station_of_[ambulance]; }
  const std::vector<int>& stations() const { return station_of_; }

  // Number of ambulances placed at each station.
  std::vector<int> Loads(std::size_t num_stations) const;

  bool operator==(const Deployment&) const = default;
  auto operator<=>(const Deployment&) const = default;

 private:
  std::vector<int> station_of_;
};

struct ValidationIssue {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  std::string code;  // stable machine-readable key, e.g. "threshold_order"
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const;  // no error-severity issue
  bool empty() const { return issues.empty(); }
  bool Has(const std::string& code) const;
  std::string ToString() const;

  bool operator==(const ValidationReport&) const = default;
};

// Checks every data invariant and all matrix dimensions. Never throws.
// d2 > d1 is reported as a warning.
ValidationReport ValidateInstance(const Instance& instance);

// Issues for a deployment against the instance: length, station range
// (constraint 6) and per-station capacity (constraint 7).
ValidationReport CheckDeployment(const Instance& instance,
                                 const Deployment& deployment);

// Copy of `instance` whose fleet is replaced by ambulances at `positions`.
Instance WithFleet(const Instance& instance, const std::vector<int>& positions);

// Copy with every demand weight (d, d1, d2) multiplied by `factor`.
Instance ScaleDemands(const Instance& instance, double factor);

}  // namespace emsreloc

#endif  // EMSRELOC_INSTANCE_H_
