#include "handover/geo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace handover::geo {

namespace {

double wrap_lon_delta(double dlon) noexcept {
  if (dlon > 180.0) return dlon - 360.0;
  if (dlon < -180.0) return dlon + 360.0;
  return dlon;
}

}  // namespace

bool is_valid(const GeoPoint& p) noexcept {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
         p.lon >= -180.0 && p.lon <= 180.0;
}

bool is_valid(const Circle& c) noexcept {
  return is_valid(c.center) && std::isfinite(c.radius) && c.radius > 0.0;
}

void validate(const GeoPoint& p) {
  if (!std::isfinite(p.lat) || p.lat < -90.0 || p.lat > 90.0)
    throw std::invalid_argument("latitude out of range [-90, 90]: " + std::to_string(p.lat));
  if (!std::isfinite(p.lon) || p.lon < -180.0 || p.lon > 180.0)
    throw std::invalid_argument("longitude out of range [-180, 180]: " + std::to_string(p.lon));
}

void validate(const Circle& c) {
  validate(c.center);
  if (!std::isfinite(c.radius) || c.radius <= 0.0)
    throw std::invalid_argument("radius must be positive and finite: " + std::to_string(c.radius));
}

double great_circle_distance(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double lat1 = deg_to_rad(a.lat);
  const double lat2 = deg_to_rad(b.lat);
  const double sin_dlat = std::sin((lat2 - lat1) / 2.0);
  const double sin_dlon = std::sin(deg_to_rad(wrap_lon_delta(b.lon - a.lon)) / 2.0);
  double h = sin_dlat * sin_dlat + std::cos(lat1) * std::cos(lat2) * sin_dlon * sin_dlon;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusMeters * std::asin(std::sqrt(h));
}

PlanarOffset project(const GeoPoint& origin, const GeoPoint& p, double ref_lat) noexcept {
  const double dlat = p.lat - origin.lat;
  const double dlon = wrap_lon_delta(p.lon - origin.lon);
  return {kEarthRadiusMeters * deg_to_rad(dlon) * std::cos(deg_to_rad(ref_lat)),
          kEarthRadiusMeters * deg_to_rad(dlat)};
}

GeoPoint unproject(const GeoPoint& origin, const PlanarOffset& offset, double ref_lat) noexcept {
  GeoPoint p;
  p.lat = origin.lat + rad_to_deg(offset.north / kEarthRadiusMeters);
  p.lon = origin.lon +
          rad_to_deg(offset.east / (kEarthRadiusMeters * std::cos(deg_to_rad(ref_lat))));
  if (p.lon > 180.0) p.lon -= 360.0;
  if (p.lon < -180.0) p.lon += 360.0;
  return p;
}

bool within_projection_range(const Circle& a, const Circle& b) noexcept {
  return std::abs(a.center.lat - b.center.lat) <= kMaxProjectionLatSpanDeg;
}

double planar_center_distance(const Circle& a, const Circle& b) noexcept {
  // Midpoint latitude is symmetric in its arguments, so is the distance.
  const double mid_lat = (a.center.lat + b.center.lat) / 2.0;
  const double east = kEarthRadiusMeters *
                      deg_to_rad(std::abs(wrap_lon_delta(b.center.lon - a.center.lon))) *
                      std::cos(deg_to_rad(mid_lat));
  const double north = kEarthRadiusMeters * deg_to_rad(std::abs(b.center.lat - a.center.lat));
  return std::hypot(east, north);
}

double lens_area(double d, double r1, double r2) noexcept {
  const auto [small, large] = std::minmax(r1, r2);
  if (d >= small + large) return 0.0;
  if (d <= large - small) return std::numbers::pi * small * small;

  const double d2 = d * d;
  const double s2 = small * small;
  const double l2 = large * large;
  const double cos_small = std::clamp((d2 + s2 - l2) / (2.0 * d * small), -1.0, 1.0);
  const double cos_large = std::clamp((d2 + l2 - s2) / (2.0 * d * large), -1.0, 1.0);
  const double kite = (-d + small + large) * (d + small - large) * (d - small + large) *
                      (d + small + large);
  const double area =
      s2 * std::acos(cos_small) + l2 * std::acos(cos_large) - 0.5 * std::sqrt(std::max(kite, 0.0));
  return std::clamp(area, 0.0, std::numbers::pi * s2);
}

double Overlap::iou() const noexcept {
  const double u = union_area();
  return u > 0.0 ? intersection / u : 0.0;
}

Overlap overlap(const Circle& a, const Circle& b) {
  if (!within_projection_range(a, b))
    throw std::domain_error("circle centers are more than 5 degrees of latitude apart");
  Overlap o;
  o.area_a = std::numbers::pi * a.radius * a.radius;
  o.area_b = std::numbers::pi * b.radius * b.radius;
  o.intersection = lens_area(planar_center_distance(a, b), a.radius, b.radius);
  return o;
}

double circle_intersection_area(const Circle& a, const Circle& b) { return overlap(a, b).intersection; }

double union_area(const Circle& a, const Circle& b) { return overlap(a, b).union_area(); }

double iou(const Circle& a, const Circle& b) { return overlap(a, b).iou(); }

double coverage_fraction(const Circle& covered, const Circle& by) {
  return overlap(covered, by).fraction_of_a();
}

}  // namespace handover::geo
