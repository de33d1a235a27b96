#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "handover/model.hpp"

namespace handover {

struct GroundTruthConfig {
  double radius_factor = 1.0;           // 1.0 strict, 1.2 tolerant of coverage fluctuation
  double max_association_gap_s = 300.0;

  /// Throws std::invalid_argument when radius_factor < 1 or the gap is not positive.
  void validate() const;
};

struct Association {
  LocationEvent event;
  std::optional<GpsFix> fix;
  std::optional<double> centroid_distance;  // meters; needs a fix and a plan cell
  bool in_truth = false;
};

/// Pairs every event with the fix nearest in time (earlier fix on ties).
/// Fixes further than `max_association_gap_s` away leave the event fixless.
/// Parallel over events.
std::vector<Association> associate(const Trajectory& events, std::span<const GpsFix> gps,
                                   const GroundTruthConfig& cfg);

/// Serial two-pointer sweep; reference for associate().
std::vector<Association> associate_serial(const Trajectory& events, std::span<const GpsFix> gps,
                                          const GroundTruthConfig& cfg);

struct GroundTruth {
  std::set<std::string> cells;
  std::vector<Association> associations;  // centroid_distance and in_truth filled in

  std::size_t event_count() const noexcept;
};

/// An event is in truth iff its cell is in the plan, it has a fix, and the
/// fix lies within radius_factor * radius of the cell centroid.
GroundTruth build_ground_truth(std::vector<Association> associations, const CoveragePlan& plan,
                               const GroundTruthConfig& cfg);

std::set<std::string> unique_cells(const Trajectory& t);

struct EvaluationReport {
  std::set<std::string> truth_cells;
  std::set<std::string> filter_cells;
  std::set<std::string> matching_cells;
  std::set<std::string> not_in_truth_cells;
  std::set<std::string> not_in_filter_cells;
  double precision = 0.0;
  double recall = 0.0;
  bool precision_defined = true;  // false when the filter set is empty
  bool recall_defined = true;     // false when the truth set is empty

  // Event-level context for the report table; not used in the ratios.
  std::size_t truth_events = 0;
  std::size_t filter_events = 0;
};

EvaluationReport evaluate(const std::set<std::string>& truth_cells, const std::set<std::string>& filter_cells);

/// Precision and recall computed directly from cardinalities.
struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};
PrecisionRecall precision_recall(std::size_t truth, std::size_t filter, std::size_t matching);

struct DistanceSample {
  LocationEvent event;
  std::optional<double> centroid_distance;  // absent when the cell has no coverage info
  std::optional<double> radius;
};

/// One sample per event that has an associated fix.
std::vector<DistanceSample> distance_profile(std::span<const Association> associations, const CoveragePlan& plan);

}  // namespace handover
