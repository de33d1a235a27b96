#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "handover/geo.hpp"
#include "handover/timestamp.hpp"

namespace handover {

/// Ingestion failure carrying the 1-based line number of the offending record.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Cell identifiers are restricted to `[A-Za-z0-9_-]+`.
bool is_valid_cell_id(std::string_view id) noexcept;

struct Cell {
  std::string id;
  geo::Circle coverage;
};

/// Cells indexed by identifier. Iteration follows insertion order.
class CoveragePlan {
 public:
  CoveragePlan() = default;

  /// Throws std::invalid_argument on a duplicate or malformed id or an invalid circle.
  void add(Cell cell);

  const Cell* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  std::span<const Cell> cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }

 private:
  std::vector<Cell> cells_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LocationEvent {
  Timestamp time;
  std::string cell_id;

  friend bool operator==(const LocationEvent&, const LocationEvent&) = default;
};

struct GpsFix {
  Timestamp time;
  geo::GeoPoint position;

  friend bool operator==(const GpsFix&, const GpsFix&) = default;
};

/// Time-ordered event sequence. Ties keep their insertion order.
class Trajectory {
 public:
  Trajectory() = default;

  /// Throws std::invalid_argument if timestamps decrease.
  explicit Trajectory(std::vector<LocationEvent> events);

  /// Stable-sorts by timestamp.
  static Trajectory from_unsorted(std::vector<LocationEvent> events);

  std::span<const LocationEvent> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  bool empty() const noexcept { return events_.empty(); }
  const LocationEvent& operator[](std::size_t i) const { return events_[i]; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<LocationEvent> events_;
};

// CSV ingestion. `source` names the stream in error messages.
CoveragePlan load_coverage_plan(std::istream& in, const std::string& source = "<plan>");
Trajectory load_events(std::istream& in, const std::string& source = "<events>");
std::vector<GpsFix> load_gps(std::istream& in, const std::string& source = "<gps>");

// File variants; an unreadable path raises ParseError at line 0 naming the path.
CoveragePlan load_coverage_plan_file(const std::string& path);
Trajectory load_events_file(const std::string& path);
std::vector<GpsFix> load_gps_file(const std::string& path);

void write_coverage_plan(std::ostream& out, const CoveragePlan& plan);
void write_events(std::ostream& out, std::span<const LocationEvent> events);
void write_gps(std::ostream& out, std::span<const GpsFix> fixes);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace handover
