#include "handover/geojson.hpp"

#include <cmath>
#include <set>
#include <string>

namespace handover {

std::vector<geo::GeoPoint> circle_ring(const geo::Circle& c, int segments) {
  std::vector<geo::GeoPoint> ring;
  ring.reserve(static_cast<std::size_t>(segments) + 1);
  for (int i = 0; i < segments; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / segments;
    ring.push_back(geo::unproject(c.center, {c.radius * std::cos(theta), c.radius * std::sin(theta)}, c.center.lat));
  }
  ring.push_back(ring.front());
  return ring;
}

namespace {

nlohmann::json position(const geo::GeoPoint& p) { return nlohmann::json::array({p.lon, p.lat}); }

}  // namespace

nlohmann::json export_geojson(const CoveragePlan& plan, const Trajectory& original, std::span<const GpsFix> gps,
                              const Trajectory& filtered) {
  nlohmann::json features = nlohmann::json::array();

  for (const auto& fix : gps) {
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", position(fix.position)}}},
                        {"properties", {{"kind", "gps"}, {"timestamp", format_timestamp(fix.time)}}}});
  }

  std::set<std::string> kept;
  for (const auto& e : filtered.events()) kept.insert(e.cell_id);

  std::set<std::string> seen;
  for (const auto& e : original.events()) {
    if (!seen.insert(e.cell_id).second) continue;
    const Cell* cell = plan.find(e.cell_id);
    if (cell == nullptr) continue;
    nlohmann::json ring = nlohmann::json::array();
    for (const auto& p : circle_ring(cell->coverage)) ring.push_back(position(p));
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Polygon"}, {"coordinates", nlohmann::json::array({ring})}}},
                        {"properties",
                         {{"kind", "cell"},
                          {"cell_id", cell->id},
                          {"radius_m", cell->coverage.radius},
                          {"status", kept.contains(cell->id) ? "kept" : "removed"}}}});
  }

  return {{"type", "FeatureCollection"}, {"features", features}};
}

}  // namespace handover
