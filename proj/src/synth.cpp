#include "handover/synth.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "handover/filter.hpp"

namespace handover::synth {

void ScenarioConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  auto rate = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0 || v >= 1.0) throw std::invalid_argument(std::string(name) + " must be in [0, 1)");
  };
  if (waypoints.size() < 2) throw std::invalid_argument("at least two waypoints are required");
  for (const auto& w : waypoints) geo::validate(w);
  positive(speed_mps, "speed");
  positive(gps_interval_s, "gps_interval");
  positive(event_interval_s, "event_interval");
  positive(cell_spacing_m, "cell_spacing");
  positive(cell_radius_min_m, "cell_radius_min");
  positive(cell_radius_max_m, "cell_radius_max");
  positive(hop_min_distance_m, "hop_min_distance");
  positive(pingpong_gap_s, "pingpong_gap");
  if (cell_radius_max_m < cell_radius_min_m) throw std::invalid_argument("cell radius range is empty");
  rate(pingpong_rate, "pingpong_rate");
  rate(hop_rate, "hop_rate");
  if (pingpong_rate + hop_rate >= 1.0) throw std::invalid_argument("pingpong_rate + hop_rate must be < 1");
  if (2.0 * pingpong_gap_s >= event_interval_s)
    throw std::invalid_argument("an A,B,A triple must fit inside one event interval");
}

std::string_view to_string(Label l) noexcept {
  switch (l) {
    case Label::clean: return "clean";
    case Label::pingpong: return "pingpong";
    case Label::hop: return "hop";
  }
  return "unknown";
}

namespace {

/// Portable uniform draws on top of mt19937_64 (the standard distributions
/// are not specified bit-for-bit across library implementations).
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }

 private:
  std::mt19937_64 engine_;
};

/// Polyline parameterised by arc length.
class Path {
 public:
  explicit Path(const std::vector<geo::GeoPoint>& waypoints) : points_(waypoints) {
    cumulative_.push_back(0.0);
    for (std::size_t i = 1; i < points_.size(); ++i)
      cumulative_.push_back(cumulative_.back() + geo::great_circle_distance(points_[i - 1], points_[i]));
  }

  double length() const { return cumulative_.back(); }

  struct Sample {
    geo::GeoPoint position;
    geo::PlanarOffset heading;  // unit vector, local east/north
  };

  Sample at(double s) const {
    s = std::clamp(s, 0.0, length());
    std::size_t seg = 1;
    while (seg + 1 < points_.size() && cumulative_[seg] < s) ++seg;
    // Skip zero-length segments.
    while (seg + 1 < points_.size() && cumulative_[seg] - cumulative_[seg - 1] <= 0.0) ++seg;
    const auto& a = points_[seg - 1];
    const auto& b = points_[seg];
    const double seg_len = cumulative_[seg] - cumulative_[seg - 1];
    const double f = seg_len > 0.0 ? (s - cumulative_[seg - 1]) / seg_len : 0.0;

    Sample out;
    out.position = {a.lat + f * (b.lat - a.lat), a.lon + f * (b.lon - a.lon)};
    const auto d = geo::project(a, b, (a.lat + b.lat) / 2.0);
    const double norm = std::hypot(d.east, d.north);
    out.heading = norm > 0.0 ? geo::PlanarOffset{d.east / norm, d.north / norm} : geo::PlanarOffset{1.0, 0.0};
    return out;
  }

 private:
  std::vector<geo::GeoPoint> points_;
  std::vector<double> cumulative_;
};

std::string numbered(const char* prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%05zu", prefix, n);
  return buf;
}

geo::GeoPoint offset_from(const Path::Sample& s, double lateral) {
  // Left-hand normal of the heading.
  const geo::PlanarOffset off{-s.heading.north * lateral, s.heading.east * lateral};
  return geo::unproject(s.position, off, s.position.lat);
}

/// Staggered double row of serving cells along the path plus a sparse set of
/// far decoy cells that hop events can be redirected to.
CoveragePlan build_plan(const ScenarioConfig& cfg, const Path& path, Random& rng) {
  CoveragePlan plan;
  const double step = cfg.cell_spacing_m / 2.0;
  const double lateral = cfg.cell_spacing_m / 4.0;
  const auto serving = static_cast<std::size_t>(std::ceil(path.length() / step)) + 1;
  for (std::size_t k = 0; k < serving; ++k) {
    const auto sample = path.at(static_cast<double>(k) * step);
    const double side = k % 2 == 0 ? lateral : -lateral;
    const double radius = rng.uniform(cfg.cell_radius_min_m, cfg.cell_radius_max_m);
    plan.add({numbered("C", k), {offset_from(sample, side), radius}});
  }

  const double decoy_lateral = cfg.hop_min_distance_m + 2.0 * cfg.cell_radius_max_m + cfg.cell_spacing_m;
  const double decoy_step = 10.0 * cfg.cell_spacing_m;
  const auto decoys = static_cast<std::size_t>(std::floor(path.length() / decoy_step)) + 1;
  std::size_t id = 0;
  for (std::size_t k = 0; k < decoys; ++k) {
    const auto sample = path.at(static_cast<double>(k) * decoy_step);
    for (const double side : {decoy_lateral, -decoy_lateral}) {
      const geo::GeoPoint center = offset_from(sample, side);
      if (!geo::is_valid(center)) continue;
      const double radius = rng.uniform(cfg.cell_radius_min_m, cfg.cell_radius_max_m);
      plan.add({numbered("D", id++), {center, radius}});
    }
  }
  return plan;
}

const Cell* nearest_covering(const CoveragePlan& plan, const geo::GeoPoint& p) {
  const Cell* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& c : plan.cells()) {
    const double d = geo::great_circle_distance(c.coverage.center, p);
    if (d <= c.coverage.radius && d < best_d) {
      best = &c;
      best_d = d;
    }
  }
  return best;
}

/// A ping-pong partner for `a`: covers `p`, overlaps `a` little enough to
/// clear the similarity and containment anchors, and is near enough that the
/// bounce does not read as a speed violation.
/// The cell served just before `a` is excluded: bouncing back to it reads as
/// the pattern X,A,X and implicates `a` instead of the injected event.
std::vector<const Cell*> pingpong_partners(const CoveragePlan& plan, const Cell& a, const std::string& previous,
                                           const geo::GeoPoint& p, double gap_s) {
  const FilterConfig limits{};
  std::vector<const Cell*> out;
  for (const auto& c : plan.cells()) {
    if (c.id == a.id || c.id == previous) continue;
    if (geo::great_circle_distance(c.coverage.center, p) > c.coverage.radius) continue;
    if (!geo::within_projection_range(a.coverage, c.coverage)) continue;
    const auto o = geo::overlap(a.coverage, c.coverage);
    if (!(o.iou() < limits.similarity_threshold)) continue;
    if (o.fraction_of_a() > limits.covered_threshold || o.fraction_of_b() > limits.covered_threshold) continue;
    const double d = geo::great_circle_distance(a.coverage.center, c.coverage.center);
    if (!(d / gap_s < limits.speed_threshold_mps)) continue;
    out.push_back(&c);
  }
  return out;
}

std::vector<const Cell*> hop_targets(const CoveragePlan& plan, const geo::GeoPoint& p, double min_distance) {
  std::vector<const Cell*> out;
  for (const auto& c : plan.cells())
    if (geo::great_circle_distance(c.coverage.center, p) >= min_distance) out.push_back(&c);
  return out;
}

std::string describe(const geo::GeoPoint& p) {
  return "(" + format_double(p.lat) + ", " + format_double(p.lon) + ")";
}

}  // namespace

Scenario generate(const ScenarioConfig& cfg) {
  cfg.validate();
  Random rng(cfg.seed);
  const Path path(cfg.waypoints);
  const double duration = path.length() / cfg.speed_mps;

  Scenario s;
  s.plan = build_plan(cfg, path, rng);

  for (std::size_t k = 0; static_cast<double>(k) * cfg.gps_interval_s <= duration; ++k) {
    const double t = static_cast<double>(k) * cfg.gps_interval_s;
    s.gps.push_back({add_seconds(cfg.start, t), path.at(t * cfg.speed_mps).position});
  }

  std::vector<LocationEvent> events;
  std::string last_clean;
  auto emit = [&](double t, const geo::GeoPoint& where, const std::string& cell, Label label) {
    events.push_back({add_seconds(cfg.start, t), cell});
    s.labels.push_back(label);
    s.event_positions.push_back(where);
    if (label == Label::clean) last_clean = cell;
  };
  auto position_at = [&](double t) { return path.at(t * cfg.speed_mps).position; };
  auto serving_cell = [&](const geo::GeoPoint& p) {
    const Cell* c = nearest_covering(s.plan, p);
    if (c == nullptr) throw GenerationError("no covering cell at " + describe(p) + "; raise plan density");
    return c;
  };

  for (std::size_t k = 0; static_cast<double>(k) * cfg.event_interval_s <= duration; ++k) {
    const double t = static_cast<double>(k) * cfg.event_interval_s;
    const geo::GeoPoint here = position_at(t);
    const Cell* cell = serving_cell(here);
    const double u = rng.uniform();

    if (u < cfg.pingpong_rate) {
      const double tb = t + cfg.pingpong_gap_s;
      const double ta = t + 2.0 * cfg.pingpong_gap_s;
      const auto partners = pingpong_partners(s.plan, *cell, last_clean, position_at(tb), cfg.pingpong_gap_s);
      emit(t, here, cell->id, Label::clean);
      if (!partners.empty()) {
        const Cell* b = partners[rng.index(partners.size())];
        emit(tb, position_at(tb), b->id, Label::pingpong);
        emit(ta, position_at(ta), cell->id, Label::clean);
      }
    } else if (u < cfg.pingpong_rate + cfg.hop_rate) {
      const auto targets = hop_targets(s.plan, here, cfg.hop_min_distance_m);
      if (targets.empty()) {
        emit(t, here, cell->id, Label::clean);
      } else {
        emit(t, here, targets[rng.index(targets.size())]->id, Label::hop);
      }
    } else {
      emit(t, here, cell->id, Label::clean);
    }
  }

  s.events = Trajectory(std::move(events));
  return s;
}

void write_labels(std::ostream& out, const Scenario& s) {
  out << "timestamp,cell_id,label\n";
  for (std::size_t i = 0; i < s.events.size(); ++i)
    out << format_timestamp(s.events[i].time) << ',' << s.events[i].cell_id << ',' << to_string(s.labels[i])
        << '\n';
}

}  // namespace handover::synth
