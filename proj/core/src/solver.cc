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

#include "emsreloc/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "emsreloc/errors.h"

namespace emsreloc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTolerance = 1e-9;

using Clock = std::chrono::steady_clock;

std::vector<int> PreviousTwin(const PenaltyMatrix& penalties, bool enabled) {
  std::vector<int> twin(penalties.fleet_size(), -1);
  if (!enabled) return twin;
  for (std::size_t k = 1; k < twin.size(); ++k) {
    for (std::size_t prev = k; prev-- > 0;) {
      if (penalties.SameColumn(prev, k)) {
        twin[k] = static_cast<int>(prev);
        break;
      }
    }
  }
  return twin;
}

// Stations that can still take an ambulance, i.e. load below capacity.
bool HasRoom(const SearchModel& model, const PartialAssignment& partial,
             std::size_t station) {
  return partial.loads[station] < model.capacity(station);
}

class BranchAndBound {
 public:
  BranchAndBound(const SearchModel& model, const SolverConfig& config)
      : model_(model),
        config_(config),
        twin_(PreviousTwin(model.penalties(), config.symmetry_breaking)),
        start_(Clock::now()) {}

  void Run() {
    PartialAssignment partial = model_.Root();
    if (model_.fleet_size() == 0) {
      ++nodes_;
      Leaf(partial);
      return;
    }
    ++nodes_;
    Descend(partial);
  }

  bool has_incumbent() const { return has_incumbent_; }
  bool stopped() const { return stopped_; }
  const std::vector<int>& incumbent() const { return incumbent_; }
  double incumbent_objective() const { return incumbent_objective_; }
  double open_bound() const { return open_bound_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  void Descend(PartialAssignment& partial) {
    const std::size_t level = partial.depth();
    if (level == model_.fleet_size()) {
      Leaf(partial);
      return;
    }
    const int twin = twin_[level];
    const int first = twin >= 0 ? partial.station_of[twin] : 0;
    for (int j = first; j < static_cast<int>(model_.num_stations()); ++j) {
      if (!HasRoom(model_, partial, j)) continue;
      model_.Push(partial, j);
      if (stopped_) {
        RecordOpen(partial);
        model_.Pop(partial);
        continue;
      }
      ++nodes_;
      if (LimitHit()) {
        stopped_ = true;
        RecordOpen(partial);
        model_.Pop(partial);
        continue;
      }
      if (config_.feasibility_pruning && model_.CannotBeFeasible(partial)) {
        model_.Pop(partial);
        continue;
      }
      if (config_.bound_pruning && has_incumbent_ &&
          model_.Bound(partial, BoundKind::kCombined) <=
              incumbent_objective_ - kTolerance) {
        model_.Pop(partial);
        continue;
      }
      Descend(partial);
      model_.Pop(partial);
    }
  }

  void Leaf(const PartialAssignment& partial) {
    if (!model_.LeafFeasible(partial)) return;
    const double objective = model_.LeafObjective(partial);
    if (!has_incumbent_ || objective > incumbent_objective_ + kTolerance) {
      has_incumbent_ = true;
      incumbent_objective_ = objective;
      incumbent_ = partial.station_of;
    }
  }

  void RecordOpen(const PartialAssignment& partial) {
    if (model_.CannotBeFeasible(partial)) return;
    open_bound_ =
        std::max(open_bound_, model_.Bound(partial, BoundKind::kCombined));
  }

  bool LimitHit() const {
    if (config_.node_limit && nodes_ > *config_.node_limit) return true;
    if (config_.time_limit && (nodes_ & 255) == 0 &&
        Clock::now() - start_ > *config_.time_limit) {
      return true;
    }
    return false;
  }

  const SearchModel& model_;
  const SolverConfig& config_;
  std::vector<int> twin_;
  Clock::time_point start_;
  std::int64_t nodes_ = 0;
  bool stopped_ = false;
  bool has_incumbent_ = false;
  double incumbent_objective_ = -kInf;
  double open_bound_ = -kInf;
  std::vector<int> incumbent_;
};

std::uint64_t CheckedPower(std::uint64_t base, std::size_t exponent,
                           std::uint64_t cap) {
  std::uint64_t result = 1;
  for (std::size_t e = 0; e < exponent; ++e) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

// Pre-search certificates that need no enumeration.
std::vector<Violation> QuickInfeasibility(const Instance& instance,
                                          const CoverageMatrices& coverage) {
  std::vector<Violation> out;
  long long total = 0;
  for (const Station& s : instance.stations) total += std::max(0, s.capacity);
  if (total < static_cast<long long>(instance.fleet_size())) {
    out.push_back({7,
                   {},
                   fmt::format("insufficient total capacity: sum of U_j = {} "
                               "< fleet size {}",
                               total, instance.fleet_size())});
    return out;
  }
  std::vector<int> unreachable;
  for (std::size_t i = 0; i < instance.num_points(); ++i) {
    bool reachable = false;
    if (instance.fleet_size() > 0) {
      for (std::size_t j = 0; j < instance.num_stations() && !reachable; ++j) {
        reachable = coverage.delta(i, j) && instance.stations[j].capacity > 0;
      }
    }
    if (!reachable) unreachable.push_back(static_cast<int>(i) + 1);
  }
  if (!unreachable.empty()) {
    out.push_back({2, unreachable,
                   "no usable station reaches these points within r2"});
  }
  return out;
}

Solution Finish(const Instance& instance, const CoverageMatrices& coverage,
                const PenaltyMatrix& penalties, ModelKind kind,
                Clock::time_point start, bool found,
                const std::vector<int>& best, double best_objective,
                bool exhausted, double open_bound, std::int64_t nodes) {
  Solution s;
  s.nodes_explored = nodes;
  if (found) {
    s.deployment = Deployment(best);
    s.evaluation =
        EvaluateDeployment(instance, coverage, *s.deployment, penalties, kind);
  }
  if (exhausted) {
    s.status = found ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
    s.best_bound = found ? best_objective : -kInf;
  } else {
    s.status = SolveStatus::kLimitReached;
    s.best_bound = std::max(found ? best_objective : -kInf, open_bound);
  }
  if (s.status == SolveStatus::kInfeasible) {
    s.infeasibility = DiagnoseInfeasibility(instance, coverage, kind);
  }
  s.wall_time = Clock::now() - start;
  return s;
}

}  // namespace

std::string_view StatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kLimitReached:
      return "LimitReached";
  }
  return "Unknown";
}

SearchModel::SearchModel(const Instance& instance,
                         const CoverageMatrices& coverage,
                         const PenaltyMatrix& penalties, ModelKind kind)
    : coverage_(&coverage),
      penalties_(&penalties),
      num_points_(instance.num_points()),
      fleet_size_(instance.fleet_size()),
      weights_(WeightsFor(instance, kind)) {
  CheckCoverageShape(instance, coverage);
  CheckPenaltyShape(instance, penalties);
  capacity_.reserve(instance.num_stations());
  for (const Station& s : instance.stations) capacity_.push_back(s.capacity);
  for (std::size_t i = 0; i < num_points_; ++i) {
    full_value_ += weights_.single[i] + weights_.double_[i];
  }
  proportional_rhs_ = ProportionalTarget(weights_, instance.alpha);
  min_penalty_.assign(fleet_size_, 0.0);
  for (std::size_t k = 0; k < fleet_size_; ++k) {
    double best = kInf;
    for (std::size_t j = 0; j < capacity_.size(); ++j) {
      best = std::min(best, penalties(j, k));
    }
    min_penalty_[k] = capacity_.empty() ? 0.0 : best;
  }
}

PartialAssignment SearchModel::Root() const {
  PartialAssignment p;
  p.station_of.reserve(fleet_size_);
  p.penalty_prefix.reserve(fleet_size_ + 1);
  p.loads.assign(capacity_.size(), 0);
  p.c1.assign(num_points_, 0);
  p.c2.assign(num_points_, 0);
  return p;
}

void SearchModel::Push(PartialAssignment& partial, int station) const {
  const std::size_t k = partial.depth();
  partial.station_of.push_back(station);
  ++partial.loads[station];
  AccumulateColumn(coverage_->gamma_column(station), 1, partial.c1);
  AccumulateColumn(coverage_->delta_column(station), 1, partial.c2);
  partial.penalty_prefix.push_back(partial.penalty_prefix.back() +
                                   (*penalties_)(station, k));
}

void SearchModel::Pop(PartialAssignment& partial) const {
  const int station = partial.station_of.back();
  partial.station_of.pop_back();
  partial.penalty_prefix.pop_back();
  --partial.loads[station];
  AccumulateColumn(coverage_->gamma_column(station), -1, partial.c1);
  AccumulateColumn(coverage_->delta_column(station), -1, partial.c2);
}

double SearchModel::OptimisticGain(int c1, std::size_t point,
                                   std::size_t remaining) const {
  // Best average value per added ambulance over any number of additions.
  if (c1 >= 2) return 0.0;
  if (c1 == 1) return weights_.double_[point];
  const double one = weights_.single[point];
  if (remaining < 2) return one;
  return std::max(one, 0.5 * (one + weights_.double_[point]));
}

double SearchModel::Bound(const PartialAssignment& partial,
                          BoundKind kind) const {
  const std::size_t remaining = fleet_size_ - partial.depth();
  double ceiling = full_value_ - partial.penalty();
  for (std::size_t k = partial.depth(); k < fleet_size_; ++k) {
    ceiling -= min_penalty_[k];
  }
  if (kind == BoundKind::kCeiling) return ceiling;

  double marginal = CoverageValue(weights_, partial.c1) - partial.penalty();
  if (remaining > 0) {
    std::vector<double> gain(num_points_);
    for (std::size_t i = 0; i < num_points_; ++i) {
      gain[i] = OptimisticGain(partial.c1[i], i, remaining);
    }
    std::vector<double> column_gain(capacity_.size(), -kInf);
    for (std::size_t j = 0; j < capacity_.size(); ++j) {
      if (partial.loads[j] >= capacity_[j]) continue;
      double g = 0.0;
      const PointSet& col = coverage_->gamma_column(j);
      for (auto i = col.find_first(); i != PointSet::npos;
           i = col.find_next(i)) {
        g += gain[i];
      }
      column_gain[j] = g;
    }
    for (std::size_t k = partial.depth(); k < fleet_size_; ++k) {
      double best = -kInf;
      for (std::size_t j = 0; j < capacity_.size(); ++j) {
        if (column_gain[j] == -kInf) continue;
        best = std::max(best, column_gain[j] - (*penalties_)(j, k));
      }
      if (best == -kInf) return -kInf;
      marginal += best;
    }
  }
  if (kind == BoundKind::kMarginal) return marginal;
  return std::min(ceiling, marginal);
}

bool SearchModel::CannotBeFeasible(const PartialAssignment& partial) const {
  const std::size_t remaining = fleet_size_ - partial.depth();
  if (remaining == 0) return !LeafFeasible(partial);

  PointSet open_points(num_points_);
  for (std::size_t i = 0; i < num_points_; ++i) {
    if (partial.c2[i] == 0) open_points.set(i);
  }
  if (open_points.any()) {
    PointSet reach(num_points_);
    std::size_t best = 0;
    for (std::size_t j = 0; j < capacity_.size(); ++j) {
      if (partial.loads[j] >= capacity_[j]) continue;
      const PointSet& col = coverage_->delta_column(j);
      reach |= col;
      best = std::max(best, (open_points & col).count());
    }
    if (!open_points.is_subset_of(reach)) return true;
    if (open_points.count() > remaining * best) return true;
  }

  const double lhs = ProportionalCoverage(weights_, partial.c1);
  if (MeetsProportion(lhs, proportional_rhs_)) return false;
  double best_gain = 0.0;
  double reachable_gain = 0.0;
  std::vector<bool> counted(num_points_, false);
  for (std::size_t j = 0; j < capacity_.size(); ++j) {
    if (partial.loads[j] >= capacity_[j]) continue;
    double g = 0.0;
    const PointSet& col = coverage_->gamma_column(j);
    for (auto i = col.find_first(); i != PointSet::npos;
         i = col.find_next(i)) {
      if (partial.c1[i] != 0) continue;
      g += weights_.proportion[i];
      if (!counted[i]) {
        counted[i] = true;
        reachable_gain += weights_.proportion[i];
      }
    }
    best_gain = std::max(best_gain, g);
  }
  const double optimistic =
      lhs + std::min(reachable_gain, static_cast<double>(remaining) * best_gain);
  const double slack = kTolerance * std::max(1.0, std::abs(proportional_rhs_));
  return !MeetsProportion(optimistic + slack, proportional_rhs_);
}

bool SearchModel::LeafFeasible(const PartialAssignment& partial) const {
  for (int c : partial.c2) {
    if (c < 1) return false;
  }
  return MeetsProportion(ProportionalCoverage(weights_, partial.c1),
                         proportional_rhs_);
}

double SearchModel::LeafObjective(const PartialAssignment& partial) const {
  return CoverageValue(weights_, partial.c1) -
         RelocationCost(*penalties_, partial.station_of);
}

double NodeBound(const SearchModel& model, const PartialAssignment& partial,
                 BoundKind kind) {
  return model.Bound(partial, kind);
}

Solution Solve(const Instance& instance, const CoverageMatrices& coverage,
               const PenaltyMatrix& penalties, ModelKind kind,
               const SolverConfig& config) {
  const auto start = Clock::now();
  const SearchModel model(instance, coverage, penalties, kind);

  if (std::vector<Violation> quick = QuickInfeasibility(instance, coverage);
      !quick.empty()) {
    Solution s;
    s.status = SolveStatus::kInfeasible;
    s.best_bound = -kInf;
    s.infeasibility = std::move(quick);
    s.wall_time = Clock::now() - start;
    return s;
  }

  BranchAndBound search(model, config);
  search.Run();
  return Finish(instance, coverage, penalties, kind, start,
                search.has_incumbent(), search.incumbent(),
                search.incumbent_objective(), !search.stopped(),
                search.open_bound(), search.nodes());
}

Solution BruteForce(const Instance& instance, const CoverageMatrices& coverage,
                    const PenaltyMatrix& penalties, ModelKind kind) {
  const auto start = Clock::now();
  const std::size_t m = instance.num_stations();
  const std::size_t fleet = instance.fleet_size();
  const std::uint64_t size = CheckedPower(m, fleet, kBruteForceLimit);
  if (size > kBruteForceLimit) {
    throw SizeGuardError(fmt::format(
        "brute force over {}^{} deployments exceeds the limit of {}", m, fleet,
        kBruteForceLimit));
  }
  const SearchModel model(instance, coverage, penalties, kind);

  bool found = false;
  double best_objective = -kInf;
  std::vector<int> best;
  std::int64_t visited = 0;

  std::vector<int> station_of(fleet, 0);
  for (std::uint64_t code = 0; code < size; ++code) {
    // Odometer with the last ambulance varying fastest yields lex order.
    std::uint64_t rest = code;
    for (std::size_t k = fleet; k-- > 0;) {
      station_of[k] = static_cast<int>(rest % m);
      rest /= m;
    }
    const Deployment dep(station_of);
    const std::vector<int> loads = dep.Loads(m);
    bool fits = true;
    for (std::size_t j = 0; j < m && fits; ++j) {
      fits = loads[j] <= instance.stations[j].capacity;
    }
    if (!fits) continue;
    ++visited;
    PartialAssignment partial = model.Root();
    for (int j : station_of) model.Push(partial, j);
    if (!model.LeafFeasible(partial)) continue;
    const double objective = model.LeafObjective(partial);
    if (!found || objective > best_objective + kTolerance) {
      found = true;
      best_objective = objective;
      best = station_of;
    }
  }
  return Finish(instance, coverage, penalties, kind, start, found, best,
                best_objective, true, -kInf, visited);
}

std::vector<Violation> DiagnoseInfeasibility(const Instance& instance,
                                             const CoverageMatrices& coverage,
                                             ModelKind kind) {
  CheckCoverageShape(instance, coverage);
  std::vector<Violation> quick = QuickInfeasibility(instance, coverage);
  if (!quick.empty()) return quick;

  const std::size_t n = instance.num_points();
  const std::size_t fleet = instance.fleet_size();
  std::vector<std::size_t> usable;
  for (std::size_t j = 0; j < instance.num_stations(); ++j) {
    if (instance.stations[j].capacity > 0) usable.push_back(j);
  }

  // Largest number of points any choice of `fleet` distinct usable stations
  // covers within r2; one ambulance per station is enough for (2).
  const std::size_t pick = std::min(fleet, usable.size());
  constexpr std::uint64_t kMaxSubsets = 2'000'000;
  std::uint64_t subsets = 1;
  for (std::size_t t = 0; t < pick && subsets <= kMaxSubsets; ++t) {
    subsets = subsets * (usable.size() - t) / (t + 1);
  }
  if (subsets <= kMaxSubsets) {
    std::size_t best = 0;
    std::vector<PointSet> best_sets;
    std::vector<std::size_t> idx(pick);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      PointSet covered(n);
      for (std::size_t t : idx) covered |= coverage.delta_column(usable[t]);
      const std::size_t count = covered.count();
      if (count > best) {
        best = count;
        best_sets.clear();
      }
      if (count == best) best_sets.push_back(covered);
      // Next combination in lexicographic order.
      std::size_t t = pick;
      while (t > 0 && idx[t - 1] == usable.size() - pick + t - 1) --t;
      if (t == 0) break;
      ++idx[t - 1];
      for (std::size_t u = t; u < pick; ++u) idx[u] = idx[u - 1] + 1;
    }
    if (best < n) {
      // Points left uncovered by at least one best selection.
      std::vector<int> contested;
      for (std::size_t i = 0; i < n; ++i) {
        for (const PointSet& s : best_sets) {
          if (!s.test(i)) {
            contested.push_back(static_cast<int>(i) + 1);
            break;
          }
        }
      }
      return {{2, contested,
               fmt::format("{} ambulance(s) cover at most {} of {} points "
                           "within r2; these points cannot all be covered",
                           fleet, best, n)}};
    }
  }

  const int id = ProportionalConstraintId(kind);
  if (subsets > kMaxSubsets) {
    return {{id,
             {},
             "no deployment satisfies constraint (2) together with this "
             "constraint"}};
  }
  return {{id,
           {},
           fmt::format("no deployment meeting constraint (2) covers a "
                       "proportion {} of demand within r1",
                       instance.alpha)}};
}

}  // namespace emsreloc
