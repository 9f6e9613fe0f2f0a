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

#include "emsreloc/sweep.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include <fmt/format.h>

#include "emsreloc/coverage.h"
#include "emsreloc/errors.h"

namespace emsreloc {
namespace {

double RoundAlpha(double a) { return std::round(a * 1e12) / 1e12; }

double ParseDouble(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(fmt::format("invalid number \"{}\"", s));
  }
  if (used != s.size()) throw Error(fmt::format("invalid number \"{}\"", s));
  return v;
}

std::string RowLine(const SweepRow& row, bool with_timing) {
  std::string line = fmt::format("{},{},{:.2f},{},", row.period,
                                 ModelName(row.model), row.alpha,
                                 StatusName(row.status));
  if (row.has_deployment) {
    line += fmt::format("{:.6f},{},{},{:.6f}", row.objective,
                        row.single_covered, row.double_covered,
                        row.relocation_cost);
  } else {
    line += ",,,";
  }
  if (with_timing) {
    line += fmt::format(
        ",{:.3f}",
        std::chrono::duration<double, std::milli>(row.wall_time).count());
  }
  return line;
}

std::string Optional(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::vector<double> AlphaGrid(double from, double to, double step) {
  if (!(step > 0.0)) throw Error("alpha step must be positive");
  if (from > to) throw Error("alpha range is empty (from > to)");
  const auto count =
      static_cast<long long>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    grid.push_back(RoundAlpha(from + static_cast<double>(i) * step));
  }
  return grid;
}

std::vector<double> DefaultAlphaGrid() { return AlphaGrid(0.90, 1.00, 0.01); }

std::vector<double> ParseAlphaGrid(std::string_view text) {
  if (text.find(':') != std::string_view::npos) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos) {
      throw Error(fmt::format("alpha grid \"{}\" must be from:to:step", text));
    }
    return AlphaGrid(ParseDouble(text.substr(0, first)),
                     ParseDouble(text.substr(first + 1, second - first - 1)),
                     ParseDouble(text.substr(second + 1)));
  }
  std::vector<double> grid;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(
        start, comma == std::string_view::npos ? text.size() - start
                                               : comma - start);
    if (!piece.empty()) grid.push_back(RoundAlpha(ParseDouble(piece)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return grid;
}

std::vector<SweepRow> AlphaSweep(const Instance& instance,
                                 std::span<const ModelKind> kinds,
                                 std::span<const double> alpha_grid,
                                 const std::optional<PenaltyMatrix>& penalties,
                                 const SweepConfig& config) {
  const CoverageMatrices coverage = BuildCoverageMatrices(instance);
  const PenaltyMatrix zero =
      PenaltyMatrix::Zero(instance.num_stations(), instance.fleet_size());
  const PenaltyMatrix& m = penalties ? *penalties : zero;

  std::vector<std::pair<ModelKind, double>> cells;
  for (ModelKind kind : kinds) {
    for (double alpha : alpha_grid) cells.emplace_back(kind, alpha);
  }
  auto solve_cell = [&](std::size_t c) {
    Instance copy = instance;
    copy.alpha = cells[c].second;
    const Solution s =
        Solve(copy, coverage, m, cells[c].first, config.solver);
    return MakeRow(config.period, cells[c].first, cells[c].second, s);
  };

  std::vector<SweepRow> rows(cells.size());
  const std::size_t jobs =
      static_cast<std::size_t>(std::max(1, config.jobs));
  if (jobs == 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) rows[c] = solve_cell(c);
  } else {
    for (std::size_t base = 0; base < cells.size(); base += jobs) {
      std::vector<std::future<SweepRow>> pending;
      const std::size_t end = std::min(cells.size(), base + jobs);
      for (std::size_t c = base; c < end; ++c) {
        pending.push_back(std::async(std::launch::async, solve_cell, c));
      }
      for (std::size_t c = base; c < end; ++c) {
        rows[c] = pending[c - base].get();
      }
    }
  }
  SortRows(rows);
  return rows;
}

std::vector<ComparisonRow> CompareReport(std::span<const SweepRow> rows,
                                         ModelKind baseline,
                                         ModelKind candidate) {
  using Key = std::tuple<int, double>;
  std::map<Key, const SweepRow*> base_rows;
  std::map<Key, const SweepRow*> cand_rows;
  for (const SweepRow& r : rows) {
    if (r.model == baseline) base_rows[{r.period, r.alpha}] = &r;
    if (r.model == candidate) cand_rows[{r.period, r.alpha}] = &r;
  }
  if (base_rows.size() != cand_rows.size()) {
    throw Error(fmt::format("{} and {} rows cover different alpha grids",
                            ModelName(baseline), ModelName(candidate)));
  }
  std::vector<ComparisonRow> out;
  for (const auto& [key, b] : base_rows) {
    const auto it = cand_rows.find(key);
    if (it == cand_rows.end()) {
      throw Error(fmt::format("no {} row for period {} alpha {:.2f}",
                              ModelName(candidate), std::get<0>(key),
                              std::get<1>(key)));
    }
    const SweepRow* c = it->second;
    ComparisonRow row;
    row.period = b->period;
    row.alpha = b->alpha;
    row.baseline_status = b->status;
    row.candidate_status = c->status;
    row.baseline_single = b->single_covered;
    row.candidate_single = c->single_covered;
    row.baseline_double = b->double_covered;
    row.candidate_double = c->double_covered;
    if (b->has_deployment && c->has_deployment) {
      row.delta_single = c->single_covered - b->single_covered;
      row.delta_double = c->double_covered - b->double_covered;
    }
    out.push_back(row);
  }
  return out;
}

void WriteResultsCsv(std::span<const SweepRow> rows, std::ostream& out) {
  out << kResultsCsvHeader << '\n';
  for (const SweepRow& row : rows) out << RowLine(row, true) << '\n';
}

std::string ResultsCsv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  WriteResultsCsv(rows, out);
  return out.str();
}

std::string ResultsCsvWithoutTiming(std::span<const SweepRow> rows) {
  std::string out(kResultsCsvHeader.substr(0, kResultsCsvHeader.rfind(',')));
  out += '\n';
  for (const SweepRow& row : rows) out += RowLine(row, false) + '\n';
  return out;
}

void WriteComparisonCsv(std::span<const ComparisonRow> rows,
                        std::ostream& out) {
  out << "period,alpha,baseline_status,candidate_status,baseline_single,"
         "candidate_single,delta_single,baseline_double,candidate_double,"
         "delta_double\n";
  for (const ComparisonRow& r : rows) {
    out << fmt::format("{},{:.2f},{},{},{},{},{},{},{},{}\n", r.period, r.alpha,
                       StatusName(r.baseline_status),
                       StatusName(r.candidate_status), r.baseline_single,
                       r.candidate_single, Optional(r.delta_single),
                       r.baseline_double, r.candidate_double,
                       Optional(r.delta_double));
  }
}

std::string ComparisonCsv(std::span<const ComparisonRow> rows) {
  std::ostringstream out;
  WriteComparisonCsv(rows, out);
  return out.str();
}

std::string DeploymentsCsv(std::span<const PeriodDeployment> deployments) {
  std::string out = "period,model,operating_alpha,ambulance,station\n";
  for (const PeriodDeployment& d : deployments) {
    const std::string alpha =
        d.operating_alpha ? fmt::format("{:.2f}", *d.operating_alpha) : "";
    for (std::size_t k = 0; k < d.station_of.size(); ++k) {
      const std::string station =
          d.station_of[k] >= 0 ? std::to_string(d.station_of[k] + 1) : "";
      out += fmt::format("{},{},{},{},{}\n", d.period, ModelName(d.model),
                         alpha, k + 1, station);
    }
  }
  return out;
}

}  // namespace emsreloc
