#include <doctest.h>

#include <random>
#include <sstream>

#include "handover/model.hpp"

using namespace handover;

namespace {

template <typename Fn>
std::size_t error_line(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string plan_text(const CoveragePlan& p) {
  std::ostringstream out;
  write_coverage_plan(out, p);
  return out.str();
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("coverage plan with one record") {
  std::istringstream in("cell_id,lat,lon,radius_m\nA,58.38,26.72,500\n");
  const auto plan = load_coverage_plan(in);
  REQUIRE(plan.size() == 1);
  const Cell* a = plan.find("A");
  REQUIRE(a != nullptr);
  CHECK(a->coverage.radius == 500.0);
  CHECK(a->coverage.center == geo::GeoPoint{58.38, 26.72});
  CHECK(plan.find("B") == nullptr);
}

TEST_CASE("coverage plan errors carry line numbers") {
  CHECK(error_line([] {
          std::istringstream in("cell_id,lat,lon,radius_m\nA,58.38,26.72,500\nA,58.0,26.0,100\n");
          load_coverage_plan(in);
        }) == 3);
  CHECK(error_line([] {
          std::istringstream in("cell_id,lat,lon,radius_m\nA,58.38,26.72,-5\n");
          load_coverage_plan(in);
        }) == 2);
  CHECK(error_line([] {
          std::istringstream in("cell_id,lat,lon,radius_m\nA,58.38,26.72,0\n");
          load_coverage_plan(in);
        }) == 2);
  CHECK(error_line([] {
          std::istringstream in("cell_id,lat,lon,radius_m\nA,58.38,26.72,500\nB,91,26.72,500\n");
          load_coverage_plan(in);
        }) == 3);
  CHECK(error_line([] {
          std::istringstream in("cell_id,lat,lon,radius_m\nA,58.38,east,500\n");
          load_coverage_plan(in);
        }) == 2);
  CHECK(error_line([] {
          std::istringstream in("cell_id,lat,lon,radius_m\nA B,58.38,26.72,500\n");
          load_coverage_plan(in);
        }) == 2);
  CHECK(error_line([] {
          std::istringstream in("id,lat,lon\n");
          load_coverage_plan(in);
        }) == 1);

  std::istringstream in("cell_id,lat,lon,radius_m\nA,58.38,26.72,-5\n");
  try {
    load_coverage_plan(in, "plan.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("plan.csv:2") == 0);
    CHECK(std::string(e.what()).find("radius") != std::string::npos);
  }
}

TEST_CASE("coverage plan rejects duplicates and bad circles programmatically") {
  CoveragePlan plan;
  plan.add({"A", {{58, 26}, 100}});
  CHECK_THROWS_AS(plan.add({"A", {{58, 26}, 100}}), std::invalid_argument);
  CHECK_THROWS_AS(plan.add({"B", {{58, 26}, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(plan.add({"", {{58, 26}, 10}}), std::invalid_argument);
}

TEST_CASE("events are stably sorted by time") {
  std::istringstream in(
      "timestamp,cell_id\n"
      "2021-06-01T08:02:00Z,C\n"
      "2021-06-01T08:00:00Z,A\n"
      "2021-06-01T08:01:00Z,B\n"
      "2021-06-01T10:01:00+02:00,D\n");
  const auto t = load_events(in);
  REQUIRE(t.size() == 4);
  CHECK(t[0].cell_id == "A");
  CHECK(t[1].cell_id == "B");
  CHECK(t[2].cell_id == "D");  // tie with B's instant keeps file order after B
  CHECK(t[3].cell_id == "C");
}

TEST_CASE("events edge cases") {
  std::istringstream header_only("timestamp,cell_id\n");
  CHECK(load_events(header_only).empty());

  std::istringstream empty("");
  CHECK(load_events(empty).empty());

  CHECK(error_line([] {
          std::istringstream in("timestamp,cell_id\n2021-06-01T08:00:00Z,A\nnot-a-date,B\n");
          load_events(in);
        }) == 3);
  CHECK(error_line([] {
          std::istringstream in("timestamp,cell_id\n2021-06-01T08:00:00Z,\n");
          load_events(in);
        }) == 2);
  CHECK(error_line([] {
          std::istringstream in("timestamp,cell_id\n2021-06-01T08:00:00,A\n");
          load_events(in);
        }) == 2);

  std::istringstream crlf("timestamp_iso8601,cell_id\r\n2021-06-01T08:00:00Z,A\r\n\r\n");
  const auto t = load_events(crlf);
  REQUIRE(t.size() == 1);
  CHECK(t[0].cell_id == "A");
}

TEST_CASE("gps loading") {
  std::istringstream two("timestamp,lat,lon\n2021-06-01T08:00:10Z,58.4,26.7\n2021-06-01T08:00:00Z,58.38,26.72\n");
  const auto fixes = load_gps(two);
  REQUIRE(fixes.size() == 2);
  CHECK(fixes[0].position.lat == 58.38);
  CHECK(fixes[1].position.lat == 58.4);

  CHECK(error_line([] {
          std::istringstream in("timestamp,lat,lon\n2021-06-01T08:00:00Z,95,26.7\n");
          load_gps(in);
        }) == 2);

  std::istringstream empty("");
  CHECK(load_gps(empty).empty());
}

TEST_CASE("trajectory rejects decreasing timestamps") {
  const auto a = *parse_timestamp("2021-06-01T08:00:00Z");
  const auto b = *parse_timestamp("2021-06-01T08:01:00Z");
  CHECK_THROWS_AS(Trajectory({{b, "A"}, {a, "B"}}), std::invalid_argument);
  CHECK_NOTHROW(Trajectory({{a, "A"}, {a, "B"}, {b, "C"}}));
}

TEST_CASE("missing files name the path") {
  try {
    load_coverage_plan_file("/nonexistent/plan.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/plan.csv") != std::string::npos);
  }
}

TEST_CASE("serialize(load(x)) is the canonical form of x") {
  std::istringstream plan_in("cell_id,lat,lon,radius_m\nA, 58.380 ,26.72,500.0\nB,-1e1,1.5e2,0.25\n");
  CHECK(plan_text(load_coverage_plan(plan_in)) == "cell_id,lat,lon,radius_m\nA,58.38,26.72,500\nB,-10,150,0.25\n");

  std::istringstream ev_in("timestamp,cell_id\n2021-06-01T10:00:00.500+02:00,A\n");
  std::ostringstream ev_out;
  write_events(ev_out, load_events(ev_in).events());
  CHECK(ev_out.str() == "timestamp,cell_id\n2021-06-01T08:00:00.500Z,A\n");
}

TEST_CASE("round trip over random plans, events and fixes") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180), radius(0.001, 50000);
  std::uniform_int_distribution<long> ms(0, 10'000'000'000L);
  for (int round = 0; round < 50; ++round) {
    CoveragePlan plan;
    std::vector<LocationEvent> events;
    std::vector<GpsFix> fixes;
    for (int i = 0; i < 40; ++i) {
      const std::string id = "c_" + std::to_string(round) + "-" + std::to_string(i);
      plan.add({id, {{lat(rng), lon(rng)}, radius(rng)}});
      const Timestamp t{std::chrono::milliseconds{ms(rng)}};
      events.push_back({t, id});
      fixes.push_back({t, {lat(rng), lon(rng)}});
    }
    const Trajectory traj = Trajectory::from_unsorted(events);
    std::stable_sort(fixes.begin(), fixes.end(), [](const auto& a, const auto& b) { return a.time < b.time; });

    std::stringstream ps, es, gs;
    write_coverage_plan(ps, plan);
    write_events(es, traj.events());
    write_gps(gs, fixes);
    const auto plan2 = load_coverage_plan(ps);
    REQUIRE(plan2.size() == plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) {
      CHECK(plan2.cells()[i].id == plan.cells()[i].id);
      CHECK(plan2.cells()[i].coverage == plan.cells()[i].coverage);
    }
    CHECK(load_events(es) == traj);
    CHECK(load_gps(gs) == fixes);
  }
}

}
