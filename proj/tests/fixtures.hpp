#pragma once

#include <cmath>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "handover/filter.hpp"
#include "handover/model.hpp"

namespace handover::testing {

inline const geo::GeoPoint kOrigin{58.38, 26.72};

inline Timestamp t0() { return *parse_timestamp("2021-06-01T08:00:00Z"); }

inline Timestamp at(double seconds) { return add_seconds(t0(), seconds); }

/// Point `east` / `north` meters from `origin` (local plane).
inline geo::GeoPoint offset(double east, double north = 0.0, const geo::GeoPoint& origin = kOrigin) {
  return geo::unproject(origin, {east, north}, origin.lat);
}

inline Cell cell(std::string id, double east, double radius, double north = 0.0) {
  return {std::move(id), {offset(east, north), radius}};
}

inline CoveragePlan plan_of(std::initializer_list<Cell> cells) {
  CoveragePlan p;
  for (const auto& c : cells) p.add(c);
  return p;
}

inline Trajectory events_of(std::initializer_list<std::pair<double, const char*>> items) {
  std::vector<LocationEvent> ev;
  for (const auto& [s, id] : items) ev.push_back({at(s), id});
  return Trajectory(std::move(ev));
}

/// Filters and returns the decision for the event at `index`.
inline Decision decision_at(const Trajectory& t, const CoveragePlan& plan, std::size_t index,
                            const FilterConfig& cfg = {}) {
  return filter_trajectory(t, plan, cfg).decisions.at(index);
}

/// One constructed input per anchor branch: destination is event `index`.
struct AnchorCase {
  std::string name;
  CoveragePlan plan;
  Trajectory events;
  std::size_t index;
  Verdict verdict;
  Anchor anchor;
  Reason reason;
};

inline std::vector<AnchorCase> anchor_cases() {
  std::vector<AnchorCase> cases;
  auto add = [&](std::string name, CoveragePlan plan, Trajectory t, std::size_t index, Verdict v, Anchor a,
                 Reason r) { cases.push_back({std::move(name), std::move(plan), std::move(t), index, v, a, r}); };

  // Two cells with modest overlap: IoU ~0.3, gap 0, low speed.
  auto pair_plan = [] { return plan_of({cell("A", 0, 500), cell("B", 450, 500), cell("C", 900, 500)}); };

  add("anchor 1 same cell accepted", pair_plan(), events_of({{0, "A"}, {30, "A"}}), 1, Verdict::accepted,
      Anchor::same_cell, Reason::same_cell);
  add("anchor 1 different cell falls through", pair_plan(), events_of({{0, "A"}, {60, "B"}, {120, "C"}}), 1,
      Verdict::accepted, Anchor::ping_pong, Reason::aba_pass);

  add("anchor 2 unknown cell discarded", pair_plan(), events_of({{0, "A"}, {30, "X"}, {60, "A"}}), 1,
      Verdict::discarded, Anchor::plan_membership, Reason::not_in_plan);
  add("anchor 2 known cell continues", pair_plan(), events_of({{0, "A"}, {1200, "B"}}), 1, Verdict::accepted,
      Anchor::time_gap, Reason::time_gap_accept);

  add("anchor 3 long gap accepted", plan_of({cell("A", 0, 500), cell("F", 50000, 500)}),
      events_of({{0, "A"}, {1200, "F"}}), 1, Verdict::accepted, Anchor::time_gap, Reason::time_gap_accept);
  add("anchor 3 gap equal to threshold accepted", plan_of({cell("A", 0, 500), cell("F", 50000, 500)}),
      events_of({{0, "A"}, {600, "F"}}), 1, Verdict::accepted, Anchor::time_gap, Reason::time_gap_accept);
  add("anchor 3 short gap continues", plan_of({cell("A", 0, 500), cell("F", 50000, 500)}),
      events_of({{0, "A"}, {599, "F"}}), 1, Verdict::discarded, Anchor::hop_distance, Reason::hop_distance);

  add("anchor 4 distant cell discarded", plan_of({cell("A", 0, 500), cell("B", 3000, 500)}),
      events_of({{0, "A"}, {60, "B"}}), 1, Verdict::discarded, Anchor::hop_distance, Reason::hop_distance);
  add("anchor 4 adjacent cell continues", plan_of({cell("A", 0, 500), cell("B", 1100, 500)}),
      events_of({{0, "A"}, {300, "B"}}), 1, Verdict::accepted, Anchor::ping_pong, Reason::aba_pass);

  add("anchor 5 fast move discarded", plan_of({cell("A", 0, 1600), cell("B", 3000, 1600)}),
      events_of({{0, "A"}, {60, "B"}}), 1, Verdict::discarded, Anchor::speed, Reason::speed_exceeded);
  add("anchor 5 simultaneous events discarded", pair_plan(), events_of({{0, "A"}, {0, "B"}}), 1,
      Verdict::discarded, Anchor::speed, Reason::speed_exceeded);
  add("anchor 5 slow move continues", plan_of({cell("A", 0, 1600), cell("B", 3000, 1600)}),
      events_of({{0, "A"}, {200, "B"}}), 1, Verdict::accepted, Anchor::ping_pong, Reason::aba_pass);

  add("anchor 6 near-identical coverage discarded", plan_of({cell("A", 0, 500), cell("B", 200, 500)}),
      events_of({{0, "A"}, {60, "B"}}), 1, Verdict::discarded, Anchor::similarity, Reason::coverage_similarity);
  add("anchor 6 distinct coverage continues", pair_plan(), events_of({{0, "A"}, {60, "B"}}), 1, Verdict::accepted,
      Anchor::ping_pong, Reason::aba_pass);

  add("anchor 7 small cell inside large discarded", plan_of({cell("A", 0, 500), cell("S", 100, 200)}),
      events_of({{0, "A"}, {60, "S"}}), 1, Verdict::discarded, Anchor::containment, Reason::coverage_containment);
  add("anchor 7 large cell around small discarded", plan_of({cell("S", 100, 200), cell("A", 0, 500)}),
      events_of({{0, "S"}, {60, "A"}}), 1, Verdict::discarded, Anchor::containment, Reason::coverage_containment);
  add("anchor 7 partial overlap continues", pair_plan(), events_of({{0, "A"}, {60, "B"}}), 1, Verdict::accepted,
      Anchor::ping_pong, Reason::aba_pass);

  add("anchor 8 quick bounce discarded", pair_plan(), events_of({{0, "A"}, {60, "B"}, {120, "A"}}), 1,
      Verdict::discarded, Anchor::ping_pong, Reason::aba_ping_pong);
  add("anchor 8 slow return accepted", pair_plan(), events_of({{0, "A"}, {60, "B"}, {700, "A"}}), 1,
      Verdict::accepted, Anchor::ping_pong, Reason::aba_pass);
  add("anchor 8 onward move accepted", pair_plan(), events_of({{0, "A"}, {60, "B"}, {120, "C"}}), 1,
      Verdict::accepted, Anchor::ping_pong, Reason::aba_pass);
  add("anchor 8 last event accepted", pair_plan(), events_of({{0, "A"}, {60, "B"}}), 1, Verdict::accepted,
      Anchor::ping_pong, Reason::aba_pass);

  add("first event in plan accepted", pair_plan(), events_of({{0, "A"}}), 0, Verdict::accepted,
      Anchor::first_event, Reason::first_event);
  add("first event outside plan discarded", pair_plan(), events_of({{0, "X"}, {10, "A"}}), 0, Verdict::discarded,
      Anchor::first_event, Reason::not_in_plan);
  return cases;
}

}  // namespace handover::testing
