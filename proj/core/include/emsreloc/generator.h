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

#ifndef EMSRELOC_GENERATOR_H_
#define EMSRELOC_GENERATOR_H_

#include <cstdint>

#include "emsreloc/instance.h"

namespace emsreloc {

// Synthetic instance on a square region. Stations and points are placed
// uniformly at random; travel time is Euclidean distance over `speed_km_per_min`
// and station_distance is Euclidean distance in km. Points are redrawn until
// at least `min_r2_stations` stations reach them within r2.
struct GeneratorOptions {
  int num_points = 47;
  int num_stations = 12;
  int fleet_size = 8;
  int station_capacity = 2;
  double region_km = 16.0;
  double speed_km_per_min = 0.5;
  double r1 = 10.0;
  double r2 = 20.0;
  double alpha = 0.9;
  // Total simple demand across all points.
  double total_d1 = 25.0;
  // d2_i = d1_i * u with u uniform in this range.
  double simultaneous_min = 0.05;
  double simultaneous_max = 0.30;
  int min_r2_stations = 2;
};

// Same seed and options give the same instance on every platform. Throws
// Error when the options are inconsistent or points cannot be placed.
Instance GenerateCaseInstance(std::uint64_t seed,
                              const GeneratorOptions& options = {});

}  // namespace emsreloc

#endif  // EMSRELOC_GENERATOR_H_
