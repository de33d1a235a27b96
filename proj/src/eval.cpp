#include "handover/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace handover {

void GroundTruthConfig::validate() const {
  if (!std::isfinite(radius_factor) || radius_factor < 1.0)
    throw std::invalid_argument("radius_factor must be >= 1");
  if (!std::isfinite(max_association_gap_s) || max_association_gap_s <= 0.0)
    throw std::invalid_argument("max_association_gap must be positive");
}

namespace {

/// Picks between the last fix at or before `t` and the first fix after it.
std::optional<GpsFix> nearer(const GpsFix* before, const GpsFix* after, Timestamp t, double max_gap_s) {
  const GpsFix* best = nullptr;
  if (before != nullptr && after != nullptr)
    best = (t - before->time) <= (after->time - t) ? before : after;
  else
    best = before != nullptr ? before : after;
  if (best == nullptr) return std::nullopt;
  if (std::abs(seconds_between(best->time, t)) > max_gap_s) return std::nullopt;
  return *best;
}

}  // namespace

std::vector<Association> associate(const Trajectory& events, std::span<const GpsFix> gps,
                                   const GroundTruthConfig& cfg) {
  cfg.validate();
  const auto ev = events.events();
  std::vector<Association> out(ev.size());
  const auto n = static_cast<std::ptrdiff_t>(ev.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Timestamp t = ev[i].time;
    // First fix strictly after t; its predecessor is the last fix at or before t.
    const auto it = std::upper_bound(gps.begin(), gps.end(), t,
                                     [](Timestamp v, const GpsFix& f) { return v < f.time; });
    const GpsFix* after = it != gps.end() ? &*it : nullptr;
    const GpsFix* before = it != gps.begin() ? &*std::prev(it) : nullptr;
    out[i].event = ev[i];
    out[i].fix = nearer(before, after, t, cfg.max_association_gap_s);
  }
  return out;
}

std::vector<Association> associate_serial(const Trajectory& events, std::span<const GpsFix> gps,
                                          const GroundTruthConfig& cfg) {
  cfg.validate();
  std::vector<Association> out;
  out.reserve(events.size());
  std::size_t j = 0;  // first fix with time > current event time
  for (const auto& e : events.events()) {
    while (j < gps.size() && gps[j].time <= e.time) ++j;
    const GpsFix* before = j > 0 ? &gps[j - 1] : nullptr;
    const GpsFix* after = j < gps.size() ? &gps[j] : nullptr;
    Association a;
    a.event = e;
    a.fix = nearer(before, after, e.time, cfg.max_association_gap_s);
    out.push_back(std::move(a));
  }
  return out;
}

std::size_t GroundTruth::event_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(associations.begin(), associations.end(), [](const auto& a) { return a.in_truth; }));
}

GroundTruth build_ground_truth(std::vector<Association> associations, const CoveragePlan& plan,
                               const GroundTruthConfig& cfg) {
  cfg.validate();
  GroundTruth gt;
  for (auto& a : associations) {
    a.centroid_distance.reset();
    a.in_truth = false;
    const Cell* cell = plan.find(a.event.cell_id);
    if (cell == nullptr || !a.fix) continue;
    const double d = geo::great_circle_distance(cell->coverage.center, a.fix->position);
    a.centroid_distance = d;
    a.in_truth = d <= cfg.radius_factor * cell->coverage.radius;
    if (a.in_truth) gt.cells.insert(a.event.cell_id);
  }
  gt.associations = std::move(associations);
  return gt;
}

std::set<std::string> unique_cells(const Trajectory& t) {
  std::set<std::string> cells;
  for (const auto& e : t.events()) cells.insert(e.cell_id);
  return cells;
}

EvaluationReport evaluate(const std::set<std::string>& truth_cells, const std::set<std::string>& filter_cells) {
  EvaluationReport r;
  r.truth_cells = truth_cells;
  r.filter_cells = filter_cells;
  std::set_intersection(truth_cells.begin(), truth_cells.end(), filter_cells.begin(), filter_cells.end(),
                        std::inserter(r.matching_cells, r.matching_cells.end()));
  std::set_difference(filter_cells.begin(), filter_cells.end(), truth_cells.begin(), truth_cells.end(),
                      std::inserter(r.not_in_truth_cells, r.not_in_truth_cells.end()));
  std::set_difference(truth_cells.begin(), truth_cells.end(), filter_cells.begin(), filter_cells.end(),
                      std::inserter(r.not_in_filter_cells, r.not_in_filter_cells.end()));

  const auto pr = precision_recall(truth_cells.size(), filter_cells.size(), r.matching_cells.size());
  r.precision = pr.precision;
  r.recall = pr.recall;
  r.precision_defined = !filter_cells.empty();
  r.recall_defined = !truth_cells.empty();
  return r;
}

PrecisionRecall precision_recall(std::size_t truth, std::size_t filter, std::size_t matching) {
  if (matching > truth || matching > filter)
    throw std::invalid_argument("matching count exceeds a set cardinality");
  PrecisionRecall pr;
  pr.precision = filter == 0 ? 0.0 : static_cast<double>(matching) / static_cast<double>(filter);
  pr.recall = truth == 0 ? 0.0 : static_cast<double>(matching) / static_cast<double>(truth);
  return pr;
}

std::vector<DistanceSample> distance_profile(std::span<const Association> associations, const CoveragePlan& plan) {
  std::vector<DistanceSample> out;
  for (const auto& a : associations) {
    if (!a.fix) continue;
    DistanceSample s;
    s.event = a.event;
    if (const Cell* cell = plan.find(a.event.cell_id)) {
      s.centroid_distance = geo::great_circle_distance(cell->coverage.center, a.fix->position);
      s.radius = cell->coverage.radius;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace handover
