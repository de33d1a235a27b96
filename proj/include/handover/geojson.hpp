#pragma once

#include <vector>

#include <json.hpp>

#include "handover/model.hpp"

namespace handover {

inline constexpr int kCircleSegments = 64;

/// Closed counter-clockwise ring approximating `c`: `segments + 1` vertices,
/// the last equal to the first.
std::vector<geo::GeoPoint> circle_ring(const geo::Circle& c, int segments = kCircleSegments);

/// FeatureCollection with one Point per GPS fix and one Polygon per unique
/// plan cell seen in `original`, tagged `kept` when it survives in
/// `filtered` and `removed` otherwise.
nlohmann::json export_geojson(const CoveragePlan& plan, const Trajectory& original, std::span<const GpsFix> gps,
                              const Trajectory& filtered);

}  // namespace handover
