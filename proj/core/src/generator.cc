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

#include "emsreloc/generator.h"

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "emsreloc/errors.h"

namespace emsreloc {
namespace {

// std::uniform_real_distribution is implementation-defined; this is not.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  std::size_t Below(std::size_t n) {
    return static_cast<std::size_t>(Uniform() * static_cast<double>(n));
  }

 private:
  std::mt19937_64 engine_;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double Distance(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

constexpr int kMaxPlacementAttempts = 10'000;

}  // namespace

Instance GenerateCaseInstance(std::uint64_t seed,
                              const GeneratorOptions& options) {
  const auto& o = options;
  if (o.num_points < 0 || o.num_stations < 1 || o.fleet_size < 0) {
    throw Error("generator needs at least one station and nonnegative sizes");
  }
  if (o.station_capacity < 0 ||
      static_cast<long long>(o.station_capacity) * o.num_stations <
          o.fleet_size) {
    throw Error("generator capacities cannot hold the fleet");
  }
  if (o.min_r2_stations > o.num_stations) {
    throw Error(fmt::format("cannot require {} reaching stations out of {}",
                            o.min_r2_stations, o.num_stations));
  }
  if (!(o.speed_km_per_min > 0.0) || !(o.region_km > 0.0)) {
    throw Error("generator region and speed must be positive");
  }

  PortableRng rng(seed);
  const auto n = static_cast<std::size_t>(o.num_points);
  const auto m = static_cast<std::size_t>(o.num_stations);

  std::vector<Point2> stations(m);
  for (Point2& s : stations) {
    s.x = rng.Uniform(0.0, o.region_km);
    s.y = rng.Uniform(0.0, o.region_km);
  }

  Instance inst;
  inst.r1 = o.r1;
  inst.r2 = o.r2;
  inst.alpha = o.alpha;
  inst.travel_time = DenseMatrix<double>(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed;
         ++attempt) {
      const Point2 p{rng.Uniform(0.0, o.region_km),
                     rng.Uniform(0.0, o.region_km)};
      int reaching = 0;
      for (std::size_t j = 0; j < m; ++j) {
        inst.travel_time(i, j) = Distance(p, stations[j]) / o.speed_km_per_min;
        if (inst.travel_time(i, j) <= o.r2) ++reaching;
      }
      placed = reaching >= o.min_r2_stations;
    }
    if (!placed) {
      throw Error(fmt::format("could not place point {} within r2 of {} "
                              "stations",
                              i + 1, o.min_r2_stations));
    }
  }

  inst.station_distance = DenseMatrix<double>(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      inst.station_distance(a, b) =
          a == b ? 0.0 : Distance(stations[a], stations[b]);
    }
  }

  std::vector<double> raw(n);
  double raw_total = 0.0;
  for (double& w : raw) {
    w = rng.Uniform(0.2, 1.2);
    raw_total += w;
  }
  inst.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    DemandPoint& p = inst.points[i];
    p.d1 = raw[i] * o.total_d1 / raw_total;
    p.d2 = p.d1 * rng.Uniform(o.simultaneous_min, o.simultaneous_max);
    p.d = p.d1;
  }

  inst.stations.assign(m, Station{o.station_capacity});

  // Home stations: one ambulance per station in a random order, wrapping
  // around while capacity remains.
  std::vector<int> order(m);
  for (std::size_t j = 0; j < m; ++j) order[j] = static_cast<int>(j);
  for (std::size_t j = m; j > 1; --j) {
    std::swap(order[j - 1], order[rng.Below(j)]);
  }
  inst.ambulances.resize(static_cast<std::size_t>(o.fleet_size));
  std::vector<int> load(m, 0);
  std::size_t cursor = 0;
  for (Ambulance& a : inst.ambulances) {
    while (load[static_cast<std::size_t>(order[cursor % m])] >=
           o.station_capacity) {
      ++cursor;
    }
    a.home_station = order[cursor % m];
    ++load[static_cast<std::size_t>(a.home_station)];
    ++cursor;
  }
  return inst;
}

}  // namespace emsreloc
