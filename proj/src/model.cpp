#include "handover/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

namespace handover {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(source),
      line_(line) {}

bool is_valid_cell_id(std::string_view id) noexcept {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '-';
  });
}

void CoveragePlan::add(Cell cell) {
  if (!is_valid_cell_id(cell.id)) throw std::invalid_argument("invalid cell id '" + cell.id + "'");
  geo::validate(cell.coverage);
  if (index_.contains(cell.id)) throw std::invalid_argument("duplicate cell id '" + cell.id + "'");
  index_.emplace(cell.id, cells_.size());
  cells_.push_back(std::move(cell));
}

const Cell* CoveragePlan::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &cells_[it->second];
}

Trajectory::Trajectory(std::vector<LocationEvent> events) : events_(std::move(events)) {
  const auto bad = std::adjacent_find(events_.begin(), events_.end(),
                                      [](const auto& a, const auto& b) { return b.time < a.time; });
  if (bad != events_.end()) throw std::invalid_argument("trajectory timestamps decrease");
}

Trajectory Trajectory::from_unsorted(std::vector<LocationEvent> events) {
  std::stable_sort(events.begin(), events.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  return Trajectory(std::move(events));
}

namespace {

/// Line-oriented CSV reader: validates the header, skips blank lines and
/// strips a trailing carriage return.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source, std::vector<std::string_view> header)
      : in_(in), source_(std::move(source)) {
    std::string line;
    if (!std::getline(in_, line)) return;  // zero-byte input counts as empty
    ++line_no_;
    strip_cr(line);
    const auto fields = split(line);
    bool ok = fields.size() == header.size();
    for (std::size_t i = 0; ok && i < fields.size(); ++i) ok = header_matches(trim(fields[i]), header[i]);
    if (!ok) {
      std::string expected;
      for (const auto h : header) expected += (expected.empty() ? "" : ",") + std::string(h.substr(0, h.find('|')));
      fail("expected header '" + expected + "'");
    }
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      strip_cr(line);
      if (trim(line).empty()) continue;
      fields = split(line);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_no_, what); }

  void expect_columns(const std::vector<std::string>& fields, std::size_t n) const {
    if (fields.size() != n)
      fail("expected " + std::to_string(n) + " fields, got " + std::to_string(fields.size()));
  }

  double number(const std::string& field, const char* name) const {
    const std::string_view s = trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
      fail(std::string("unparsable ") + name + " '" + field + "'");
    return v;
  }

  Timestamp timestamp(const std::string& field) const {
    const auto t = parse_timestamp(trim(field));
    if (!t) fail("unparsable timestamp '" + field + "' (ISO-8601 with Z or offset required)");
    return *t;
  }

  std::string cell_id(const std::string& field) const {
    const std::string id{trim(field)};
    if (id.empty()) fail("empty cell_id");
    if (!is_valid_cell_id(id)) fail("invalid cell_id '" + id + "' (allowed: [A-Za-z0-9_-])");
    return id;
  }

  geo::GeoPoint point(const std::string& lat_field, const std::string& lon_field) const {
    const geo::GeoPoint p{number(lat_field, "lat"), number(lon_field, "lon")};
    if (!std::isfinite(p.lat) || p.lat < -90.0 || p.lat > 90.0) fail("lat out of range [-90, 90]: " + lat_field);
    if (!std::isfinite(p.lon) || p.lon < -180.0 || p.lon > 180.0)
      fail("lon out of range [-180, 180]: " + lon_field);
    return p;
  }

 private:
  // `names` lists accepted names separated by '|'.
  static bool header_matches(std::string_view name, std::string_view names) {
    for (;;) {
      const auto bar = names.find('|');
      if (names.substr(0, bar) == name) return true;
      if (bar == std::string_view::npos) return false;
      names.remove_prefix(bar + 1);
    }
  }

  static void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  }

  static std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      out.emplace_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

}  // namespace

CoveragePlan load_coverage_plan(std::istream& in, const std::string& source) {
  CsvReader reader(in, source, {"cell_id", "lat", "lon", "radius_m|radius"});
  CoveragePlan plan;
  std::vector<std::string> f;
  while (reader.next(f)) {
    reader.expect_columns(f, 4);
    Cell cell;
    cell.id = reader.cell_id(f[0]);
    cell.coverage.center = reader.point(f[1], f[2]);
    cell.coverage.radius = reader.number(f[3], "radius_m");
    if (!std::isfinite(cell.coverage.radius) || cell.coverage.radius <= 0.0)
      reader.fail("radius must be positive: " + f[3]);
    if (plan.contains(cell.id)) reader.fail("duplicate cell id '" + cell.id + "'");
    plan.add(std::move(cell));
  }
  return plan;
}

Trajectory load_events(std::istream& in, const std::string& source) {
  CsvReader reader(in, source, {"timestamp|timestamp_iso8601", "cell_id"});
  std::vector<LocationEvent> events;
  std::vector<std::string> f;
  while (reader.next(f)) {
    reader.expect_columns(f, 2);
    LocationEvent e;
    e.time = reader.timestamp(f[0]);
    e.cell_id = reader.cell_id(f[1]);
    events.push_back(std::move(e));
  }
  return Trajectory::from_unsorted(std::move(events));
}

std::vector<GpsFix> load_gps(std::istream& in, const std::string& source) {
  CsvReader reader(in, source, {"timestamp|timestamp_iso8601", "lat", "lon"});
  std::vector<GpsFix> fixes;
  std::vector<std::string> f;
  while (reader.next(f)) {
    reader.expect_columns(f, 3);
    fixes.push_back({reader.timestamp(f[0]), reader.point(f[1], f[2])});
  }
  std::stable_sort(fixes.begin(), fixes.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  return fixes;
}

CoveragePlan load_coverage_plan_file(const std::string& path) {
  auto in = open_or_throw(path);
  return load_coverage_plan(in, path);
}

Trajectory load_events_file(const std::string& path) {
  auto in = open_or_throw(path);
  return load_events(in, path);
}

std::vector<GpsFix> load_gps_file(const std::string& path) {
  auto in = open_or_throw(path);
  return load_gps(in, path);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_coverage_plan(std::ostream& out, const CoveragePlan& plan) {
  out << "cell_id,lat,lon,radius_m\n";
  for (const auto& c : plan.cells())
    out << c.id << ',' << format_double(c.coverage.center.lat) << ','
        << format_double(c.coverage.center.lon) << ',' << format_double(c.coverage.radius) << '\n';
}

void write_events(std::ostream& out, std::span<const LocationEvent> events) {
  out << "timestamp,cell_id\n";
  for (const auto& e : events) out << format_timestamp(e.time) << ',' << e.cell_id << '\n';
}

void write_gps(std::ostream& out, std::span<const GpsFix> fixes) {
  out << "timestamp,lat,lon\n";
  for (const auto& f : fixes)
    out << format_timestamp(f.time) << ',' << format_double(f.position.lat) << ','
        << format_double(f.position.lon) << '\n';
}

}  // namespace handover
