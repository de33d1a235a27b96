#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "handover/model.hpp"

namespace handover::synth {

struct ScenarioConfig {
  std::uint64_t seed = 1;
  std::vector<geo::GeoPoint> waypoints = {{58.38, 26.72}, {58.38, 27.22}};
  double speed_mps = 5.0;
  double gps_interval_s = 10.0;
  double event_interval_s = 60.0;
  double cell_spacing_m = 500.0;
  double cell_radius_min_m = 450.0;
  double cell_radius_max_m = 550.0;
  double pingpong_rate = 0.0;
  double hop_rate = 0.0;
  double hop_min_distance_m = 20000.0;
  double pingpong_gap_s = 15.0;  // spacing inside an injected A,B,A triple
  Timestamp start = Timestamp{std::chrono::sys_days{std::chrono::year{2021} / 6 / 1}} + std::chrono::hours{8};

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

enum class Label { clean, pingpong, hop };

std::string_view to_string(Label l) noexcept;

struct Scenario {
  CoveragePlan plan;
  std::vector<GpsFix> gps;
  Trajectory events;
  std::vector<Label> labels;                   // parallel to events
  std::vector<geo::GeoPoint> event_positions;  // agent position at each event
};

/// Raised when the cell layout leaves part of the path uncovered.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic in `cfg.seed`.
Scenario generate(const ScenarioConfig& cfg);

void write_labels(std::ostream& out, const Scenario& s);

}  // namespace handover::synth
