// Serial reference vs OpenMP kernels: GPS association and batch filtering.
//
//   bench_kernels [trajectories] [repeats]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <omp.h>

#include "handover/eval.hpp"
#include "handover/filter.hpp"
#include "handover/synth.hpp"

namespace {

template <typename Fn>
double time_ms(int repeats, Fn&& fn) {
  namespace chrono = std::chrono;
  const auto t0 = chrono::high_resolution_clock::now();
  for (int r = 0; r < repeats; ++r) fn();
  const auto t1 = chrono::high_resolution_clock::now();
  return chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace handover;
  const int trajectories = argc > 1 ? std::atoi(argv[1]) : 64;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

  synth::ScenarioConfig cfg;
  cfg.waypoints = {{58.0, 25.0}, {58.0, 26.0}};
  cfg.pingpong_rate = 0.1;
  cfg.hop_rate = 0.05;
  cfg.gps_interval_s = 1.0;
  const synth::Scenario base = synth::generate(cfg);

  // One trajectory per subscriber: the base stream shifted by i seconds.
  std::vector<Trajectory> batch;
  for (int i = 0; i < trajectories; ++i) {
    std::vector<LocationEvent> ev(base.events.events().begin(), base.events.events().end());
    for (auto& e : ev) e.time += std::chrono::seconds{i};
    batch.emplace_back(std::move(ev));
  }

  std::cout << "threads " << omp_get_max_threads() << "\n";
  std::cout << "events/trajectory " << base.events.size() << ", gps fixes " << base.gps.size() << "\n";

  std::size_t sink = 0;
  const double filter_serial = time_ms(repeats, [&] { sink += filter_batch_serial(batch, base.plan).size(); });
  const double filter_omp = time_ms(repeats, [&] { sink += filter_batch(batch, base.plan).size(); });
  std::cout << "filter_batch   serial " << filter_serial << " ms   omp " << filter_omp << " ms   speedup "
            << filter_serial / filter_omp << "\n";

  const GroundTruthConfig gt;
  const double assoc_serial =
      time_ms(repeats, [&] { for (const auto& t : batch) sink += associate_serial(t, base.gps, gt).size(); });
  const double assoc_omp =
      time_ms(repeats, [&] { for (const auto& t : batch) sink += associate(t, base.gps, gt).size(); });
  std::cout << "associate      serial " << assoc_serial << " ms   omp " << assoc_omp << " ms   speedup "
            << assoc_serial / assoc_omp << "\n";

  return sink == 0 ? 1 : 0;
}
