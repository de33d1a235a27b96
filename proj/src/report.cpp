#include "handover/report.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace handover {

TrajectoryStats compute_stats(const Trajectory& t) {
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& e : t.events()) ++freq[e.cell_id];
  TrajectoryStats s;
  s.location_updates = t.size();
  s.unique_cells = freq.size();
  for (const auto& [id, n] : freq) s.highest_cell_frequency = std::max(s.highest_cell_frequency, n);
  return s;
}

namespace {

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

constexpr Anchor kAnchors[] = {Anchor::first_event, Anchor::same_cell,    Anchor::plan_membership,
                               Anchor::time_gap,    Anchor::hop_distance, Anchor::speed,
                               Anchor::similarity,  Anchor::containment,  Anchor::ping_pong};

}  // namespace

void write_filter_table(std::ostream& out, const TrajectoryStats& original, const TrajectoryStats& filtered,
                        const FilterReport& report) {
  out << pad("", 24) << pad("Original", 10) << pad("Filtered", 10) << '\n';
  out << pad("Location updates", 24) << pad(std::to_string(original.location_updates), 10)
      << pad(std::to_string(filtered.location_updates), 10) << '\n';
  out << pad("Unique cells", 24) << pad(std::to_string(original.unique_cells), 10)
      << pad(std::to_string(filtered.unique_cells), 10) << '\n';
  out << pad("Highest cell frequency", 24) << pad(std::to_string(original.highest_cell_frequency), 10)
      << pad(std::to_string(filtered.highest_cell_frequency), 10) << "\n\n";

  out << pad("Anchor", 8) << pad("Accepted", 10) << pad("Discarded", 11) << '\n';
  for (const Anchor a : kAnchors) {
    const auto& t = report.tally(a);
    out << pad(std::string(anchor_label(a)), 8) << pad(std::to_string(t.accepted), 10)
        << pad(std::to_string(t.discarded), 11) << '\n';
  }
  out << pad("total", 8) << pad(std::to_string(report.accepted_count()), 10)
      << pad(std::to_string(report.discarded_count()), 11) << '\n';
}

void write_filter_records(std::ostream& out, const TrajectoryStats& original, const TrajectoryStats& filtered,
                          const FilterReport& report) {
  auto stats = [&](const char* which, const TrajectoryStats& s) {
    out << "stats." << which << ".location_updates=" << s.location_updates << '\n';
    out << "stats." << which << ".unique_cells=" << s.unique_cells << '\n';
    out << "stats." << which << ".highest_cell_frequency=" << s.highest_cell_frequency << '\n';
  };
  stats("original", original);
  stats("filtered", filtered);
  for (const Anchor a : kAnchors) {
    const auto& t = report.tally(a);
    out << "tally." << anchor_label(a) << ".accepted=" << t.accepted << '\n';
    out << "tally." << anchor_label(a) << ".discarded=" << t.discarded << '\n';
  }
  out << "events.input=" << report.decisions.size() << '\n';
  out << "events.accepted=" << report.accepted_count() << '\n';
  out << "events.discarded=" << report.discarded_count() << '\n';
}

void write_decisions(std::ostream& out, const FilterReport& report) {
  out << "timestamp,cell_id,verdict,anchor,reason\n";
  for (const auto& d : report.decisions)
    out << format_timestamp(d.event.time) << ',' << d.event.cell_id << ',' << to_string(d.verdict) << ','
        << anchor_label(d.anchor) << ',' << to_string(d.reason) << '\n';
}

void write_evaluation_table(std::ostream& out, const EvaluationReport& r, double radius_factor) {
  auto row = [&](const char* name, const std::string& value) { out << pad(name, 22) << pad(value, 10) << '\n'; };
  row("Radius factor", format_double(radius_factor));
  row("Unique GT events", std::to_string(r.truth_events));
  row("Unique Filter events", std::to_string(r.filter_events));
  row("Unique GT cells", std::to_string(r.truth_cells.size()));
  row("Unique Filter cells", std::to_string(r.filter_cells.size()));
  row("Matching cells", std::to_string(r.matching_cells.size()));
  row("Not in GT cells", std::to_string(r.not_in_truth_cells.size()));
  row("Not in Filter cells", std::to_string(r.not_in_filter_cells.size()));
  row("Precision", r.precision_defined ? fixed3(r.precision) : "undefined");
  row("Recall", r.recall_defined ? fixed3(r.recall) : "undefined");
}

void write_evaluation_records(std::ostream& out, const EvaluationReport& r, double radius_factor) {
  out << "radius_factor=" << format_double(radius_factor) << '\n';
  out << "truth_events=" << r.truth_events << '\n';
  out << "filter_events=" << r.filter_events << '\n';
  out << "truth_cells=" << r.truth_cells.size() << '\n';
  out << "filter_cells=" << r.filter_cells.size() << '\n';
  out << "matching_cells=" << r.matching_cells.size() << '\n';
  out << "not_in_truth_cells=" << r.not_in_truth_cells.size() << '\n';
  out << "not_in_filter_cells=" << r.not_in_filter_cells.size() << '\n';
  out << "precision=" << format_double(r.precision) << '\n';
  out << "precision_defined=" << (r.precision_defined ? "true" : "false") << '\n';
  out << "recall=" << format_double(r.recall) << '\n';
  out << "recall_defined=" << (r.recall_defined ? "true" : "false") << '\n';
}

void write_distance_profile(std::ostream& out, std::span<const DistanceSample> samples) {
  out << "timestamp,cell_id,centroid_distance_m,radius_m\n";
  for (const auto& s : samples) {
    out << format_timestamp(s.event.time) << ',' << s.event.cell_id << ',';
    if (s.centroid_distance) out << format_double(*s.centroid_distance);
    out << ',';
    if (s.radius) out << format_double(*s.radius);
    out << '\n';
  }
}

std::map<std::string, std::string> parse_records(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace handover
