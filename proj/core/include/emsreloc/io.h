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

#ifndef EMSRELOC_IO_H_
#define EMSRELOC_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "emsreloc/dynamics.h"
#include "emsreloc/errors.h"
#include "emsreloc/instance.h"

// JSON documents for instances, events and penalty matrices. Ids in
// documents are 1-based.
//
// Instance:
//   {"points": [{"id": 1, "d": 3, "d1": 3, "d2": 1}, ...],   // "d" optional
//    "stations": [{"id": 1, "capacity": 2}, ...],
//    "ambulances": [{"id": 1, "home_station": 1}, ...],
//    "travel_time": [[...m...], ...n rows...],
//    "station_distance": [[...m...], ...m rows...],
//    "r1": 10, "r2": 20, "alpha": 0.9}                        // alpha optional
//
// Events: [{"period": 2, "kind": "dispatch", "ambulance": 3},
//          {"period": 3, "kind": "return", "ambulance": 3, "station": 5}]
//   or the same list under {"events": [...]}.
//
// Penalties: m rows x |K| columns, as a bare array or under {"penalties": ...}.

namespace emsreloc {

// Structurally valid document whose data fails ValidateInstance.
class InvalidInstanceError : public Error {
 public:
  explicit InvalidInstanceError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Parses and, when `validate` is set, checks the instance; d defaults to d1
// and alpha to 0 when absent. Throws SchemaError or InvalidInstanceError.
Instance ParseInstance(std::string_view json_text, bool validate = true);
Instance LoadInstance(const std::string& path, bool validate = true);

// Deterministic pretty-printed document; ParseInstance(WriteInstance(x)) == x.
std::string WriteInstance(const Instance& instance);

std::vector<Event> ParseEvents(std::string_view json_text);
std::vector<Event> LoadEvents(const std::string& path);

PenaltyMatrix ParsePenalties(std::string_view json_text);
PenaltyMatrix LoadPenalties(const std::string& path);

// Throws IoError.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view content);

}  // namespace emsreloc

#endif  // EMSRELOC_IO_H_
