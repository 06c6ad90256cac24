#include <vector>

#include <benchmark/benchmark.h>

#include "slitsim/interference.hpp"
#include "slitsim/io.hpp"
#include "slitsim/model.hpp"
#include "slitsim/qm_oracle.hpp"
#include "slitsim/trajectories.hpp"

namespace {

slitsim::SimulationConfig reference_config() {
  slitsim::PhysicalParams params;
  std::vector<slitsim::SlitConfig> slits(2);
  slits[0] = {-5.0, 0.5, 1.0, 0.0};
  slits[1] = {5.0, -0.5, 1.0, 0.0};
  slitsim::GridSpec grid;
  return slitsim::validate(params, slits, grid, slitsim::PhaseMode::paper);
}

void BM_PointPair(benchmark::State& state) {
  const auto config = reference_config();
  double x = -1.3;
  for (auto _ : state) {
    const auto fields = slitsim::detail::eval_pair(
        config.slits[0], config.slits[1], config.params, x, 7.5,
        slitsim::PhaseMode::paper);
    benchmark::DoNotOptimize(fields);
    x = x < 1.3 ? x + 1e-6 : -1.3;
  }
}
BENCHMARK(BM_PointPair);

void BM_EvaluateFrame(benchmark::State& state) {
  const auto config = reference_config();
  for (auto _ : state) {
    const auto frame =
        slitsim::evaluate_frame(config, 7.5, slitsim::PhaseMode::paper);
    benchmark::DoNotOptimize(frame);
  }
}
BENCHMARK(BM_EvaluateFrame);

void BM_QuantumReferencePoint(benchmark::State& state) {
  const auto config = reference_config();
  double x = -1.3;
  for (auto _ : state) {
    const double j = slitsim::quantum_current(config.slits[0], config.slits[1],
                                              config.params, x, 7.5);
    benchmark::DoNotOptimize(j);
    x = x < 1.3 ? x + 1e-6 : -1.3;
  }
}
BENCHMARK(BM_QuantumReferencePoint);

void BM_TrajectoryBundle(benchmark::State& state) {
  auto config = reference_config();
  config.grid.nt = 81;  // keep one iteration around a millisecond
  const auto seeds =
      slitsim::seed_positions(config, 8, slitsim::PhaseMode::paper);
  for (auto _ : state) {
    const auto ts =
        slitsim::integrate(config, seeds, slitsim::PhaseMode::paper);
    benchmark::DoNotOptimize(ts);
  }
}
BENCHMARK(BM_TrajectoryBundle);

void BM_FormatDouble(benchmark::State& state) {
  double v = 0.123456789012345;
  for (auto _ : state) {
    benchmark::DoNotOptimize(slitsim::format_double(v));
    v *= 1.0000001;
  }
}
BENCHMARK(BM_FormatDouble);

void BM_RenderIntensityImage(benchmark::State& state) {
  const auto config = reference_config();
  std::vector<std::vector<double>> frames;
  for (int j = 0; j < 16; ++j) {
    auto frame = slitsim::evaluate_frame(config, config.grid.t(j * 50),
                                         slitsim::PhaseMode::paper);
    frames.push_back(std::move(frame.p_tot));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(slitsim::render_intensity_pgm(frames));
  }
}
BENCHMARK(BM_RenderIntensityImage);

}  // namespace

BENCHMARK_MAIN();
