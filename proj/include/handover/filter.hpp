#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "handover/model.hpp"

namespace handover {

/// Anchor thresholds. Defaults reproduce the published configuration.
struct FilterConfig {
  double time_threshold_s = 600.0;
  double distance_threshold = 0.20;
  double speed_threshold_mps = 25.0;  // 90 km/h
  double similarity_threshold = 0.50;
  double covered_threshold = 0.80;

  /// Throws std::invalid_argument if a threshold is non-positive or a ratio exceeds 1.
  void validate() const;

  static constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }
  static constexpr double mps_to_kmh(double mps) { return mps * 3.6; }

  friend bool operator==(const FilterConfig&, const FilterConfig&) = default;
};

/// The rule that settled an event. `first_event` covers the very first
/// plan-resident event and any leading events missing from the plan.
enum class Anchor : int {
  first_event = 0,
  same_cell = 1,
  plan_membership = 2,
  time_gap = 3,
  hop_distance = 4,
  speed = 5,
  similarity = 6,
  containment = 7,
  ping_pong = 8,
};

inline constexpr std::size_t kAnchorRows = 9;

enum class Reason {
  first_event,
  same_cell,
  not_in_plan,
  time_gap_accept,
  hop_distance,
  speed_exceeded,
  coverage_similarity,
  coverage_containment,
  aba_ping_pong,
  aba_pass,
};

enum class Verdict { accepted, discarded };

std::string_view to_string(Reason r) noexcept;
std::string_view to_string(Verdict v) noexcept;
std::string_view anchor_label(Anchor a) noexcept;  // "first", "1" .. "8"

constexpr Verdict verdict_of(Reason r) noexcept {
  switch (r) {
    case Reason::first_event:
    case Reason::same_cell:
    case Reason::time_gap_accept:
    case Reason::aba_pass:
      return Verdict::accepted;
    default:
      return Verdict::discarded;
  }
}

struct Decision {
  std::size_t index = 0;  // position in the input trajectory
  LocationEvent event;
  Verdict verdict = Verdict::accepted;
  Anchor anchor = Anchor::first_event;
  Reason reason = Reason::first_event;
};

struct AnchorTally {
  std::size_t accepted = 0;
  std::size_t discarded = 0;

  friend bool operator==(const AnchorTally&, const AnchorTally&) = default;
};

struct FilterReport {
  std::vector<Decision> decisions;
  std::array<AnchorTally, kAnchorRows> tallies{};
  Trajectory filtered;

  const AnchorTally& tally(Anchor a) const { return tallies[static_cast<std::size_t>(a)]; }
  std::size_t accepted_count() const noexcept;
  std::size_t discarded_count() const noexcept;
};

/// Runs the eight-anchor pipeline over `t`. The source is always the last
/// accepted event; a discard leaves it unchanged.
FilterReport filter_trajectory(const Trajectory& t, const CoveragePlan& plan, const FilterConfig& cfg = {});

/// Filters independent trajectories in parallel (OpenMP).
std::vector<FilterReport> filter_batch(std::span<const Trajectory> trajectories, const CoveragePlan& plan,
                                       const FilterConfig& cfg = {});

/// Serial reference for filter_batch.
std::vector<FilterReport> filter_batch_serial(std::span<const Trajectory> trajectories,
                                              const CoveragePlan& plan, const FilterConfig& cfg = {});

}  // namespace handover
