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

#include "emsreloc/dynamics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "emsreloc/coverage.h"
#include "emsreloc/errors.h"

namespace emsreloc {
namespace {

bool Contains(const std::vector<int>& sorted, int id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

PenaltyMatrix DropColumn(const PenaltyMatrix& penalties, std::size_t column) {
  DenseMatrix<double> out(penalties.num_stations(),
                          penalties.fleet_size() - 1);
  for (std::size_t j = 0; j < out.rows(); ++j) {
    for (std::size_t k = 0, src = 0; src < penalties.fleet_size(); ++src) {
      if (src == column) continue;
      out(j, k++) = penalties(j, src);
    }
  }
  return PenaltyMatrix(std::move(out));
}

PenaltyMatrix InsertZeroColumn(const PenaltyMatrix& penalties,
                               std::size_t column) {
  DenseMatrix<double> out(penalties.num_stations(),
                          penalties.fleet_size() + 1);
  for (std::size_t j = 0; j < out.rows(); ++j) {
    for (std::size_t k = 0, src = 0; k < out.cols(); ++k) {
      out(j, k) = k == column ? 0.0 : penalties(j, src++);
    }
  }
  return PenaltyMatrix(std::move(out));
}

}  // namespace

PeriodState InitialState(const Instance& instance) {
  PeriodState state;
  for (std::size_t k = 0; k < instance.fleet_size(); ++k) {
    state.available.push_back(static_cast<int>(k));
    state.positions.push_back(instance.ambulances[k].home_station);
  }
  state.penalties =
      InitPenalties(instance.num_stations(), instance.fleet_size());
  return state;
}

PenaltyMatrix InitPenalties(std::size_t num_stations, std::size_t fleet) {
  return PenaltyMatrix::Zero(num_stations, fleet);
}

PenaltyMatrix UpdatePenalties(const PeriodState& state,
                              const DenseMatrix<double>& station_distance) {
  const std::size_t m = station_distance.rows();
  if (station_distance.cols() != m) {
    throw DimensionError("station_distance must be square");
  }
  if (state.positions.size() != state.available.size()) {
    throw DimensionError("positions and available fleet differ in length");
  }
  DenseMatrix<double> values(m, state.available.size());
  for (std::size_t k = 0; k < state.available.size(); ++k) {
    const int from = state.positions[k];
    if (from < 0 || static_cast<std::size_t>(from) >= m) {
      throw DimensionError(fmt::format(
          "ambulance {} sits at station {} outside 1..{}",
          state.available[k] + 1, from + 1, m));
    }
    for (std::size_t j = 0; j < m; ++j) {
      values(j, k) = station_distance(from, j);
    }
  }
  return PenaltyMatrix(std::move(values));
}

PenaltyRule DistancePenaltyRule() {
  return [](const PeriodState& state, const Instance& instance) {
    return UpdatePenalties(state, instance.station_distance);
  };
}

PeriodState ApplyEvent(PeriodState state, const Event& event) {
  const int id = event.ambulance;
  const bool available = Contains(state.available, id);
  const bool busy = Contains(state.busy, id);
  if (!available && !busy) {
    throw EventError(fmt::format("unknown ambulance {}", id + 1));
  }
  if (event.kind == EventKind::kDispatch) {
    if (busy) {
      throw EventError(
          fmt::format("ambulance {} is already on a mission", id + 1));
    }
    const auto it =
        std::lower_bound(state.available.begin(), state.available.end(), id);
    const auto slot = static_cast<std::size_t>(it - state.available.begin());
    state.available.erase(it);
    state.positions.erase(state.positions.begin() +
                          static_cast<std::ptrdiff_t>(slot));
    state.penalties = DropColumn(state.penalties, slot);
    state.busy.insert(
        std::lower_bound(state.busy.begin(), state.busy.end(), id), id);
    return state;
  }

  if (available) {
    throw EventError(fmt::format("ambulance {} is not busy", id + 1));
  }
  if (!event.station) {
    throw EventError(
        fmt::format("return of ambulance {} needs a station", id + 1));
  }
  const int station = *event.station;
  if (station < 0 ||
      static_cast<std::size_t>(station) >= state.penalties.num_stations()) {
    throw EventError(fmt::format("return of ambulance {} to unknown station {}",
                                 id + 1, station + 1));
  }
  state.busy.erase(std::lower_bound(state.busy.begin(), state.busy.end(), id));
  const auto it =
      std::lower_bound(state.available.begin(), state.available.end(), id);
  const auto slot = static_cast<std::size_t>(it - state.available.begin());
  state.available.insert(it, id);
  state.positions.insert(
      state.positions.begin() + static_cast<std::ptrdiff_t>(slot), station);
  state.penalties = InsertZeroColumn(state.penalties, slot);
  return state;
}

HorizonTrace RunHorizon(const Instance& instance, std::span<const Event> events,
                        ModelKind kind, std::span<const double> alpha_grid,
                        const HorizonConfig& config) {
  int last_event_period = 0;
  for (std::size_t e = 0; e < events.size(); ++e) {
    if (events[e].period < 1) {
      throw EventError(fmt::format("event {} has period {} < 1", e + 1,
                                   events[e].period));
    }
    if (e > 0 && events[e].period < events[e - 1].period) {
      throw EventError("events must be sorted by period");
    }
    last_event_period = std::max(last_event_period, events[e].period);
  }
  const int periods =
      config.periods > 0 ? config.periods : std::max(1, last_event_period);
  if (last_event_period > periods) {
    throw EventError(fmt::format("event at period {} lies beyond the {}-period "
                                 "horizon",
                                 last_event_period, periods));
  }
  const PenaltyRule rule =
      config.penalty_rule ? config.penalty_rule : DistancePenaltyRule();
  const CoverageMatrices coverage = BuildCoverageMatrices(instance);

  HorizonTrace trace;
  PeriodState state = InitialState(instance);
  std::size_t next_event = 0;
  for (int t = 0; t < periods; ++t) {
    state.period = t;
    while (next_event < events.size() && events[next_event].period == t + 1) {
      state = ApplyEvent(std::move(state), events[next_event++]);
    }
    if (t > 0) {
      state.penalties = rule(state, instance);
    } else if (config.initial_penalties) {
      const PenaltyMatrix& initial = *config.initial_penalties;
      if (initial.num_stations() != instance.num_stations() ||
          initial.fleet_size() != state.available.size()) {
        throw DimensionError(fmt::format(
            "initial penalties are {}x{}, expected {}x{}",
            initial.num_stations(), initial.fleet_size(),
            instance.num_stations(), state.available.size()));
      }
      state.penalties = initial;
    } else {
      state.penalties =
          InitPenalties(instance.num_stations(), state.available.size());
    }

    Instance period_instance = WithFleet(instance, state.positions);
    std::optional<double> operating;
    std::vector<int> operating_stations;
    for (double alpha : alpha_grid) {
      period_instance.alpha = alpha;
      const Solution solution =
          Solve(period_instance, coverage, state.penalties, kind, config.solver);
      trace.rows.push_back(MakeRow(t + 1, kind, alpha, solution));
      if (!solution.deployment) continue;
      const bool chosen = config.operating_alpha
                              ? std::abs(alpha - *config.operating_alpha) < 1e-12
                              : (!operating || alpha < *operating);
      if (chosen) {
        operating = alpha;
        operating_stations = solution.deployment->stations();
      }
    }

    if (operating) state.positions = operating_stations;
    PeriodDeployment record{t + 1, kind, operating,
                            std::vector<int>(instance.fleet_size(), -1)};
    for (std::size_t k = 0; k < state.available.size(); ++k) {
      record.station_of[state.available[k]] = state.positions[k];
    }
    trace.deployments.push_back(std::move(record));
  }
  SortRows(trace.rows);
  return trace;
}

}  // namespace emsreloc
