#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "handover/eval.hpp"
#include "handover/filter.hpp"

namespace handover {

/// Per-trajectory summary: location updates, unique cells, highest cell frequency.
struct TrajectoryStats {
  std::size_t location_updates = 0;
  std::size_t unique_cells = 0;
  std::size_t highest_cell_frequency = 0;
};

TrajectoryStats compute_stats(const Trajectory& t);

void write_filter_table(std::ostream& out, const TrajectoryStats& original, const TrajectoryStats& filtered,
                        const FilterReport& report);
void write_filter_records(std::ostream& out, const TrajectoryStats& original, const TrajectoryStats& filtered,
                          const FilterReport& report);

/// `timestamp,cell_id,verdict,anchor,reason`
void write_decisions(std::ostream& out, const FilterReport& report);

void write_evaluation_table(std::ostream& out, const EvaluationReport& r, double radius_factor);
void write_evaluation_records(std::ostream& out, const EvaluationReport& r, double radius_factor);

/// `timestamp,cell_id,centroid_distance_m,radius_m`; absent values are empty fields.
void write_distance_profile(std::ostream& out, std::span<const DistanceSample> samples);

/// Reads `key=value` lines; blank lines and `#` comments are skipped.
std::map<std::string, std::string> parse_records(std::istream& in);

}  // namespace handover
