#pragma once

#include <numbers>

namespace handover::geo {

/// Mean Earth radius used for all spherical and local planar computations.
inline constexpr double kEarthRadiusMeters = 6371000.0;

/// Largest latitude separation (degrees) for which the local planar area
/// approximation is accepted.
inline constexpr double kMaxProjectionLatSpanDeg = 5.0;

struct GeoPoint {
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct Circle {
  GeoPoint center;
  double radius = 0.0;  // meters

  friend bool operator==(const Circle&, const Circle&) = default;
};

bool is_valid(const GeoPoint& p) noexcept;
bool is_valid(const Circle& c) noexcept;

/// Throws std::invalid_argument naming the offending field.
void validate(const GeoPoint& p);
void validate(const Circle& c);

inline constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

/// Haversine distance in meters.
double great_circle_distance(const GeoPoint& a, const GeoPoint& b) noexcept;

/// Planar offset of `p` relative to `origin` in meters (east, north), using an
/// equirectangular projection scaled at `ref_lat`.
struct PlanarOffset {
  double east = 0.0;
  double north = 0.0;
};
PlanarOffset project(const GeoPoint& origin, const GeoPoint& p, double ref_lat) noexcept;

/// Inverse of project(): the point lying `offset` meters from `origin`.
GeoPoint unproject(const GeoPoint& origin, const PlanarOffset& offset, double ref_lat) noexcept;

/// True when the pair satisfies the local planar projection precondition.
bool within_projection_range(const Circle& a, const Circle& b) noexcept;

/// Center distance of two circles in the equirectangular plane centred at
/// their midpoint.
double planar_center_distance(const Circle& a, const Circle& b) noexcept;

/// Area of the lens shared by two planar circles with center distance `d`.
double lens_area(double d, double r1, double r2) noexcept;

/// Areas describing how two coverage circles overlap.
struct Overlap {
  double intersection = 0.0;  // m^2
  double area_a = 0.0;        // m^2
  double area_b = 0.0;        // m^2

  double union_area() const noexcept { return area_a + area_b - intersection; }
  double iou() const noexcept;
  double fraction_of_a() const noexcept { return intersection / area_a; }
  double fraction_of_b() const noexcept { return intersection / area_b; }
};

/// Throws std::domain_error when the pair violates the projection precondition.
Overlap overlap(const Circle& a, const Circle& b);

double circle_intersection_area(const Circle& a, const Circle& b);
double union_area(const Circle& a, const Circle& b);
double iou(const Circle& a, const Circle& b);

/// Share of `covered`'s area lying inside `by`.
double coverage_fraction(const Circle& covered, const Circle& by);

}  // namespace handover::geo
