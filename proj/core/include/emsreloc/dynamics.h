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

#ifndef EMSRELOC_DYNAMICS_H_
#define EMSRELOC_DYNAMICS_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "emsreloc/evaluation.h"
#include "emsreloc/instance.h"
#include "emsreloc/solver.h"
#include "emsreloc/trace.h"

// Period-to-period relocation protocol: penalties start at zero, are reset
// from inter-station distances after each period, dispatch events shrink the
// fleet, and every period is re-solved from scratch.

namespace emsreloc {

struct PeriodState {
  int period = 0;               // 0-based
  std::vector<int> available;   // ambulance ids, ascending
  std::vector<int> busy;        // ambulance ids, ascending
  std::vector<int> positions;   // station per available ambulance
  PenaltyMatrix penalties;      // m x available.size()
};

// Period 0, whole fleet available at home stations, zero penalties.
PeriodState InitialState(const Instance& instance);

enum class EventKind { kDispatch, kReturn };

struct Event {
  int period = 1;  // 1-based period at whose start the event applies
  EventKind kind = EventKind::kDispatch;
  int ambulance = 0;              // 0-based
  std::optional<int> station;     // Return only, 0-based

  bool operator==(const Event&) const = default;
};

PenaltyMatrix InitPenalties(std::size_t num_stations, std::size_t fleet);

// M[j][k] = station_distance[position(k)][j] for each available ambulance.
// Throws DimensionError when the distance matrix does not cover the
// positions or the penalty rows.
PenaltyMatrix UpdatePenalties(const PeriodState& state,
                              const DenseMatrix<double>& station_distance);

// Computes the penalty matrix for a period t >= 1 from the fleet state.
using PenaltyRule =
    std::function<PenaltyMatrix(const PeriodState&, const Instance&)>;

// The rule used by default: distance between current and target station.
PenaltyRule DistancePenaltyRule();

// Dispatch removes the ambulance and its penalty column. Return reinstates a
// busy ambulance at the given station with a zero penalty column; the next
// penalty update overwrites it. Throws EventError for unknown ids, dispatching
// a busy ambulance, returning an available one, or a missing/invalid station.
PeriodState ApplyEvent(PeriodState state, const Event& event);

struct HorizonConfig {
  // Number of periods; 0 means the last event period (at least 1).
  int periods = 0;
  // Alpha whose deployment moves the fleet into the next period. Defaults to
  // the smallest alpha of the grid with a deployment.
  std::optional<double> operating_alpha;
  // Replaces the zero matrix of the first period; m rows and one column per
  // ambulance available after the first period's events.
  std::optional<PenaltyMatrix> initial_penalties;
  SolverConfig solver;
  // Defaults to DistancePenaltyRule when empty.
  PenaltyRule penalty_rule;
};

// For each period: apply the period's events, set penalties (zeros in the
// first period, the penalty rule afterwards), solve every alpha of the grid,
// then move the fleet to the operating alpha's deployment. A period without
// any deployment leaves positions unchanged. Throws EventError for unsorted
// events, periods outside the horizon, or invalid events.
HorizonTrace RunHorizon(const Instance& instance, std::span<const Event> events,
                        ModelKind kind, std::span<const double> alpha_grid,
                        const HorizonConfig& config = {});

}  // namespace emsreloc

#endif  // EMSRELOC_DYNAMICS_H_
