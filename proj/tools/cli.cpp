#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "handover/eval.hpp"
#include "handover/filter.hpp"
#include "handover/geojson.hpp"
#include "handover/model.hpp"
#include "handover/report.hpp"
#include "handover/synth.hpp"

namespace handover::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs, effective configuration and emitted files of one invocation.
class RunManifest {
 public:
  explicit RunManifest(std::string command) : command_(std::move(command)) {}

  void input(const std::string& key, const std::string& path) { inputs_[key] = path; }
  template <typename T>
  void config(const std::string& key, const T& value) {
    config_[key] = value;
  }
  void output(const std::string& path) { outputs_.push_back(path); }

  json to_json() const {
    return {{"tool", "handover-filter"},
            {"version", std::string(kVersion)},
            {"command", command_},
            {"inputs", inputs_},
            {"config", config_},
            {"outputs", outputs_}};
  }

 private:
  std::string command_;
  json inputs_ = json::object();
  json config_ = json::object();
  std::vector<std::string> outputs_;
};

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw OutputError("cannot write " + path);
}

template <typename Fn>
void emit(RunManifest& manifest, const std::string& path, Fn&& produce) {
  std::ostringstream ss;
  produce(ss);
  write_file(path, ss.str());
  manifest.output(path);
}

void finish(const RunManifest& manifest, const std::string& path) {
  write_file(path, manifest.to_json().dump(2) + "\n");
}

std::string default_manifest(const std::string& output) { return output + ".manifest.json"; }

// --- filter ---------------------------------------------------------------

struct FilterArgs {
  std::string plan, events, output, report, records, decisions, manifest;
  double time_threshold_s = FilterConfig{}.time_threshold_s;
  double distance_threshold = FilterConfig{}.distance_threshold;
  double speed_threshold_kmh = FilterConfig::mps_to_kmh(FilterConfig{}.speed_threshold_mps);
  double similarity_threshold = FilterConfig{}.similarity_threshold;
  double covered_threshold = FilterConfig{}.covered_threshold;

  FilterConfig config() const {
    FilterConfig c;
    c.time_threshold_s = time_threshold_s;
    c.distance_threshold = distance_threshold;
    c.speed_threshold_mps = FilterConfig::kmh_to_mps(speed_threshold_kmh);
    c.similarity_threshold = similarity_threshold;
    c.covered_threshold = covered_threshold;
    return c;
  }
};

void add_threshold_flags(CLI::App* cmd, FilterArgs& a) {
  cmd->add_option("--time-threshold-s", a.time_threshold_s, "Anchor 3 time threshold (seconds)")
      ->capture_default_str();
  cmd->add_option("--distance-threshold", a.distance_threshold, "Anchor 4 gap/distance ratio")
      ->capture_default_str();
  cmd->add_option("--speed-threshold-kmh", a.speed_threshold_kmh, "Anchor 5 speed threshold (km/h)")
      ->capture_default_str();
  cmd->add_option("--similarity-threshold", a.similarity_threshold, "Anchor 6 IoU threshold")
      ->capture_default_str();
  cmd->add_option("--covered-threshold", a.covered_threshold, "Anchor 7 coverage threshold")
      ->capture_default_str();
}

int run_filter(const FilterArgs& a, std::ostream& out) {
  const FilterConfig cfg = a.config();
  cfg.validate();

  const CoveragePlan plan = load_coverage_plan_file(a.plan);
  const Trajectory events = load_events_file(a.events);
  const FilterReport report = filter_trajectory(events, plan, cfg);
  const TrajectoryStats before = compute_stats(events);
  const TrajectoryStats after = compute_stats(report.filtered);

  RunManifest manifest("filter");
  manifest.input("plan", a.plan);
  manifest.input("events", a.events);
  manifest.config("time_threshold_s", a.time_threshold_s);
  manifest.config("distance_threshold", a.distance_threshold);
  manifest.config("speed_threshold_kmh", a.speed_threshold_kmh);
  manifest.config("similarity_threshold", a.similarity_threshold);
  manifest.config("covered_threshold", a.covered_threshold);

  emit(manifest, a.output, [&](std::ostream& os) { write_events(os, report.filtered.events()); });
  if (!a.report.empty())
    emit(manifest, a.report, [&](std::ostream& os) { write_filter_table(os, before, after, report); });
  if (!a.records.empty())
    emit(manifest, a.records, [&](std::ostream& os) { write_filter_records(os, before, after, report); });
  if (!a.decisions.empty()) emit(manifest, a.decisions, [&](std::ostream& os) { write_decisions(os, report); });
  finish(manifest, a.manifest.empty() ? default_manifest(a.output) : a.manifest);

  write_filter_table(out, before, after, report);
  return kSuccess;
}

// --- evaluate -------------------------------------------------------------

struct EvaluateArgs {
  std::string plan, events, filtered, gps, output, records, profile, manifest;
  double radius_factor = 1.0;
  double max_gap_s = GroundTruthConfig{}.max_association_gap_s;
};

int run_evaluate(const EvaluateArgs& a, std::ostream& out) {
  GroundTruthConfig gt_cfg;
  gt_cfg.radius_factor = a.radius_factor;
  gt_cfg.max_association_gap_s = a.max_gap_s;
  gt_cfg.validate();

  const CoveragePlan plan = load_coverage_plan_file(a.plan);
  const Trajectory events = load_events_file(a.events);
  const Trajectory filtered = load_events_file(a.filtered);
  const std::vector<GpsFix> gps = load_gps_file(a.gps);

  const GroundTruth truth = build_ground_truth(associate(events, gps, gt_cfg), plan, gt_cfg);
  EvaluationReport report = evaluate(truth.cells, unique_cells(filtered));
  report.truth_events = truth.event_count();
  report.filter_events = filtered.size();
  const auto profile = distance_profile(truth.associations, plan);

  RunManifest manifest("evaluate");
  manifest.input("plan", a.plan);
  manifest.input("events", a.events);
  manifest.input("filtered", a.filtered);
  manifest.input("gps", a.gps);
  manifest.config("radius_factor", a.radius_factor);
  manifest.config("max_gap_s", a.max_gap_s);

  emit(manifest, a.output, [&](std::ostream& os) { write_evaluation_table(os, report, a.radius_factor); });
  if (!a.records.empty())
    emit(manifest, a.records, [&](std::ostream& os) { write_evaluation_records(os, report, a.radius_factor); });
  if (!a.profile.empty()) emit(manifest, a.profile, [&](std::ostream& os) { write_distance_profile(os, profile); });
  finish(manifest, a.manifest.empty() ? default_manifest(a.output) : a.manifest);

  write_evaluation_table(out, report, a.radius_factor);
  return kSuccess;
}

// --- synth ----------------------------------------------------------------

struct SynthArgs {
  std::string out_dir;
  std::vector<std::string> waypoints;
  std::string start;
  synth::ScenarioConfig cfg;
};

geo::GeoPoint parse_waypoint(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--waypoint", "expected 'lat,lon', got '" + text + "'");
  try {
    std::size_t used = 0;
    const std::string lat_s = text.substr(0, comma), lon_s = text.substr(comma + 1);
    const double lat = std::stod(lat_s, &used);
    if (used != lat_s.size()) throw std::invalid_argument(text);
    const double lon = std::stod(lon_s, &used);
    if (used != lon_s.size()) throw std::invalid_argument(text);
    return {lat, lon};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--waypoint", "expected 'lat,lon', got '" + text + "'");
  }
}

int run_synth(SynthArgs a, std::ostream& out) {
  if (!a.waypoints.empty()) {
    a.cfg.waypoints.clear();
    for (const auto& w : a.waypoints) a.cfg.waypoints.push_back(parse_waypoint(w));
  }
  if (!a.start.empty()) {
    const auto t = parse_timestamp(a.start);
    if (!t) throw CLI::ValidationError("--start", "expected an ISO-8601 timestamp with zone, got '" + a.start + "'");
    a.cfg.start = *t;
  }
  a.cfg.validate();

  const synth::Scenario s = synth::generate(a.cfg);
  const fs::path dir(a.out_dir);
  const auto path = [&](const char* name) { return (dir / name).string(); };

  RunManifest manifest("synth");
  json waypoints = json::array();
  for (const auto& w : a.cfg.waypoints) waypoints.push_back(format_double(w.lat) + "," + format_double(w.lon));
  manifest.config("seed", a.cfg.seed);
  manifest.config("waypoints", waypoints);
  manifest.config("speed_mps", a.cfg.speed_mps);
  manifest.config("gps_interval_s", a.cfg.gps_interval_s);
  manifest.config("event_interval_s", a.cfg.event_interval_s);
  manifest.config("cell_spacing_m", a.cfg.cell_spacing_m);
  manifest.config("radius_min_m", a.cfg.cell_radius_min_m);
  manifest.config("radius_max_m", a.cfg.cell_radius_max_m);
  manifest.config("pingpong_rate", a.cfg.pingpong_rate);
  manifest.config("hop_rate", a.cfg.hop_rate);
  manifest.config("hop_min_distance_m", a.cfg.hop_min_distance_m);
  manifest.config("pingpong_gap_s", a.cfg.pingpong_gap_s);
  manifest.config("start", format_timestamp(a.cfg.start));

  emit(manifest, path("plan.csv"), [&](std::ostream& os) { write_coverage_plan(os, s.plan); });
  emit(manifest, path("events.csv"), [&](std::ostream& os) { write_events(os, s.events.events()); });
  emit(manifest, path("gps.csv"), [&](std::ostream& os) { write_gps(os, s.gps); });
  emit(manifest, path("labels.csv"), [&](std::ostream& os) { synth::write_labels(os, s); });
  finish(manifest, path("manifest.json"));

  std::size_t counts[3] = {};
  for (const auto l : s.labels) ++counts[static_cast<int>(l)];
  out << "cells=" << s.plan.size() << " gps=" << s.gps.size() << " events=" << s.events.size()
      << " clean=" << counts[0] << " pingpong=" << counts[1] << " hop=" << counts[2] << '\n';
  return kSuccess;
}

// --- export-geojson -------------------------------------------------------

struct ExportArgs {
  std::string plan, events, gps, filtered, output, manifest;
};

int run_export(const ExportArgs& a, std::ostream& out) {
  const CoveragePlan plan = load_coverage_plan_file(a.plan);
  const Trajectory events = load_events_file(a.events);
  const std::vector<GpsFix> gps = load_gps_file(a.gps);
  const Trajectory filtered = load_events_file(a.filtered);

  const json doc = export_geojson(plan, events, gps, filtered);

  RunManifest manifest("export-geojson");
  manifest.input("plan", a.plan);
  manifest.input("events", a.events);
  manifest.input("gps", a.gps);
  manifest.input("filtered", a.filtered);
  manifest.config("circle_segments", kCircleSegments);
  emit(manifest, a.output, [&](std::ostream& os) { os << doc.dump() << '\n'; });
  finish(manifest, a.manifest.empty() ? default_manifest(a.output) : a.manifest);

  out << "features=" << doc["features"].size() << '\n';
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ping-pong handover and hop filter for cell-event trajectories", "handover-filter"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  FilterArgs fa;
  auto* filter = app.add_subcommand("filter", "Filter a trajectory through the anchor pipeline");
  filter->add_option("--plan", fa.plan, "Coverage plan CSV")->required();
  filter->add_option("--events", fa.events, "Location events CSV")->required();
  filter->add_option("--output", fa.output, "Filtered events CSV")->required();
  filter->add_option("--report", fa.report, "Statistics and per-anchor tally table");
  filter->add_option("--records", fa.records, "Machine-readable key=value report");
  filter->add_option("--decisions", fa.decisions, "Per-event decision CSV");
  filter->add_option("--manifest", fa.manifest, "Run manifest (default: <output>.manifest.json)");
  add_threshold_flags(filter, fa);

  EvaluateArgs ea;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score filtered cells against GPS ground truth");
  evaluate_cmd->add_option("--plan", ea.plan, "Coverage plan CSV")->required();
  evaluate_cmd->add_option("--events", ea.events, "Original location events CSV")->required();
  evaluate_cmd->add_option("--filtered", ea.filtered, "Filtered location events CSV")->required();
  evaluate_cmd->add_option("--gps", ea.gps, "GPS fixes CSV")->required();
  evaluate_cmd->add_option("--output", ea.output, "Evaluation table")->required();
  evaluate_cmd->add_option("--records", ea.records, "Machine-readable key=value report");
  evaluate_cmd->add_option("--profile", ea.profile, "Centroid distance profile CSV");
  evaluate_cmd->add_option("--manifest", ea.manifest, "Run manifest (default: <output>.manifest.json)");
  evaluate_cmd->add_option("--radius-factor", ea.radius_factor, "Ground-truth radius multiplier (>= 1)")
      ->capture_default_str();
  evaluate_cmd->add_option("--max-gap-s", ea.max_gap_s, "Largest event/GPS time gap for association")
      ->capture_default_str();

  SynthArgs sa;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic scenario with labelled noise");
  synth_cmd->add_option("--out-dir", sa.out_dir, "Output directory")->required();
  synth_cmd->add_option("--seed", sa.cfg.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--waypoint", sa.waypoints, "Path vertex 'lat,lon' (repeat, at least two)");
  synth_cmd->add_option("--speed-mps", sa.cfg.speed_mps, "Agent speed")->capture_default_str();
  synth_cmd->add_option("--gps-interval-s", sa.cfg.gps_interval_s, "GPS sampling interval")->capture_default_str();
  synth_cmd->add_option("--event-interval-s", sa.cfg.event_interval_s, "Clean event interval")->capture_default_str();
  synth_cmd->add_option("--cell-spacing-m", sa.cfg.cell_spacing_m, "Cell spacing along the path")
      ->capture_default_str();
  synth_cmd->add_option("--radius-min-m", sa.cfg.cell_radius_min_m, "Smallest cell radius")->capture_default_str();
  synth_cmd->add_option("--radius-max-m", sa.cfg.cell_radius_max_m, "Largest cell radius")->capture_default_str();
  synth_cmd->add_option("--pingpong-rate", sa.cfg.pingpong_rate, "Probability of an A,B,A triple")
      ->capture_default_str();
  synth_cmd->add_option("--hop-rate", sa.cfg.hop_rate, "Probability of a hop")->capture_default_str();
  synth_cmd->add_option("--hop-min-distance-m", sa.cfg.hop_min_distance_m, "Minimum hop distance")
      ->capture_default_str();
  synth_cmd->add_option("--pingpong-gap-s", sa.cfg.pingpong_gap_s, "Spacing inside an A,B,A triple")
      ->capture_default_str();
  synth_cmd->add_option("--start", sa.start, "Scenario start time (ISO-8601 with zone)");

  ExportArgs xa;
  auto* export_cmd = app.add_subcommand("export-geojson", "Export GPS fixes and kept/removed cells as GeoJSON");
  export_cmd->add_option("--plan", xa.plan, "Coverage plan CSV")->required();
  export_cmd->add_option("--events", xa.events, "Original location events CSV")->required();
  export_cmd->add_option("--gps", xa.gps, "GPS fixes CSV")->required();
  export_cmd->add_option("--filtered", xa.filtered, "Filtered location events CSV")->required();
  export_cmd->add_option("--output", xa.output, "GeoJSON output")->required();
  export_cmd->add_option("--manifest", xa.manifest, "Run manifest (default: <output>.manifest.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*filter) return run_filter(fa, out);
    if (*evaluate_cmd) return run_evaluate(ea, out);
    if (*synth_cmd) return run_synth(sa, out);
    if (*export_cmd) return run_export(xa, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kUsageError;
}

}  // namespace handover::cli
