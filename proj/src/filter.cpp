#include "handover/filter.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace handover {

void FilterConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  auto ratio = [&](double v, const char* name) {
    positive(v, name);
    if (v > 1.0) throw std::invalid_argument(std::string(name) + " must be in (0, 1]");
  };
  positive(time_threshold_s, "time_threshold");
  ratio(distance_threshold, "distance_threshold");
  positive(speed_threshold_mps, "speed_threshold");
  ratio(similarity_threshold, "similarity_threshold");
  ratio(covered_threshold, "covered_threshold");
}

std::string_view to_string(Reason r) noexcept {
  switch (r) {
    case Reason::first_event: return "first-event";
    case Reason::same_cell: return "same-cell";
    case Reason::not_in_plan: return "not-in-plan";
    case Reason::time_gap_accept: return "time-gap-accept";
    case Reason::hop_distance: return "hop-distance";
    case Reason::speed_exceeded: return "speed-exceeded";
    case Reason::coverage_similarity: return "coverage-similarity";
    case Reason::coverage_containment: return "coverage-containment";
    case Reason::aba_ping_pong: return "aba-ping-pong";
    case Reason::aba_pass: return "aba-pass";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) noexcept {
  return v == Verdict::accepted ? "accepted" : "discarded";
}

std::string_view anchor_label(Anchor a) noexcept {
  static constexpr std::array<std::string_view, kAnchorRows> labels = {"first", "1", "2", "3", "4",
                                                                       "5",     "6", "7", "8"};
  return labels[static_cast<std::size_t>(a)];
}

std::size_t FilterReport::accepted_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : tallies) n += t.accepted;
  return n;
}

std::size_t FilterReport::discarded_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : tallies) n += t.discarded;
  return n;
}

namespace {

struct Ruling {
  Anchor anchor;
  Reason reason;
};

// Pairs beyond the planar projection range are hundreds of kilometres apart
// and are treated as disjoint.
geo::Overlap coverage_overlap(const geo::Circle& a, const geo::Circle& b) {
  if (geo::within_projection_range(a, b)) return geo::overlap(a, b);
  geo::Overlap o;
  o.area_a = std::numbers::pi * a.radius * a.radius;
  o.area_b = std::numbers::pi * b.radius * b.radius;
  return o;
}

/// Anchors 1-8 for a destination against the current source. `next` is the
/// raw event following the destination, if any.
Ruling judge(const LocationEvent& source, const Cell& source_cell, const LocationEvent& dest,
             const LocationEvent* next, const CoveragePlan& plan, const FilterConfig& cfg) {
  // 1: same cell
  if (dest.cell_id == source.cell_id) return {Anchor::same_cell, Reason::same_cell};

  // 2: plan membership
  const Cell* dest_cell = plan.find(dest.cell_id);
  if (dest_cell == nullptr) return {Anchor::plan_membership, Reason::not_in_plan};

  // 3: long gaps are accepted outright
  const double dt = seconds_between(source.time, dest.time);
  if (!(dt < cfg.time_threshold_s)) return {Anchor::time_gap, Reason::time_gap_accept};

  // 4: edge-to-edge gap relative to centroid distance
  const geo::Circle& src = source_cell.coverage;
  const geo::Circle& dst = dest_cell->coverage;
  const double d = geo::great_circle_distance(src.center, dst.center);
  const double gap = std::max(0.0, d - src.radius - dst.radius);
  const double gap_ratio = d > 0.0 ? gap / d : 0.0;
  if (!(gap_ratio < cfg.distance_threshold)) return {Anchor::hop_distance, Reason::hop_distance};

  // 5: implied speed; simultaneous events at distinct centroids are infinitely fast
  double speed = 0.0;
  if (dt > 0.0)
    speed = d / dt;
  else if (d > 0.0)
    speed = std::numeric_limits<double>::infinity();
  if (!(speed < cfg.speed_threshold_mps)) return {Anchor::speed, Reason::speed_exceeded};

  // 6: intersection over union
  const geo::Overlap o = coverage_overlap(src, dst);
  if (!(o.iou() < cfg.similarity_threshold)) return {Anchor::similarity, Reason::coverage_similarity};

  // 7: either cell mostly covered by the other
  if (o.fraction_of_a() > cfg.covered_threshold || o.fraction_of_b() > cfg.covered_threshold)
    return {Anchor::containment, Reason::coverage_containment};

  // 8: A,B,A bounce
  if (next != nullptr && next->cell_id == source.cell_id &&
      seconds_between(dest.time, next->time) < cfg.time_threshold_s)
    return {Anchor::ping_pong, Reason::aba_ping_pong};
  return {Anchor::ping_pong, Reason::aba_pass};
}

}  // namespace

FilterReport filter_trajectory(const Trajectory& t, const CoveragePlan& plan, const FilterConfig& cfg) {
  cfg.validate();

  FilterReport report;
  report.decisions.reserve(t.size());
  std::vector<LocationEvent> kept;

  const LocationEvent* source = nullptr;
  const Cell* source_cell = nullptr;
  const auto events = t.events();

  for (std::size_t i = 0; i < events.size(); ++i) {
    const LocationEvent& dest = events[i];
    Ruling ruling{};
    if (source == nullptr) {
      ruling = plan.contains(dest.cell_id) ? Ruling{Anchor::first_event, Reason::first_event}
                                           : Ruling{Anchor::first_event, Reason::not_in_plan};
    } else {
      const LocationEvent* next = i + 1 < events.size() ? &events[i + 1] : nullptr;
      ruling = judge(*source, *source_cell, dest, next, plan, cfg);
    }

    const Verdict verdict = verdict_of(ruling.reason);
    auto& tally = report.tallies[static_cast<std::size_t>(ruling.anchor)];
    if (verdict == Verdict::accepted) {
      ++tally.accepted;
      source = &dest;
      source_cell = plan.find(dest.cell_id);
      kept.push_back(dest);
    } else {
      ++tally.discarded;
    }
    report.decisions.push_back({i, dest, verdict, ruling.anchor, ruling.reason});
  }

  report.filtered = Trajectory(std::move(kept));
  return report;
}

std::vector<FilterReport> filter_batch(std::span<const Trajectory> trajectories, const CoveragePlan& plan,
                                       const FilterConfig& cfg) {
  cfg.validate();
  std::vector<FilterReport> reports(trajectories.size());
  const auto n = static_cast<std::ptrdiff_t>(trajectories.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) reports[i] = filter_trajectory(trajectories[i], plan, cfg);
  return reports;
}

std::vector<FilterReport> filter_batch_serial(std::span<const Trajectory> trajectories,
                                              const CoveragePlan& plan, const FilterConfig& cfg) {
  std::vector<FilterReport> reports;
  reports.reserve(trajectories.size());
  for (const auto& t : trajectories) reports.push_back(filter_trajectory(t, plan, cfg));
  return reports;
}

}  // namespace handover
