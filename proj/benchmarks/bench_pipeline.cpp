#include <benchmark/benchmark.h>

#include "smc/cca.hpp"
#include "smc/explore.hpp"
#include "smc/random.hpp"
#include "smc/svd_analysis.hpp"

namespace {

smc::ExplorationBatch make_batch(smc::ExcitationMode mode, const smc::VisualInput& input, std::size_t k) {
  auto rr = smc::make_stream(1, "retina");
  auto mr = smc::make_stream(1, "motors");
  const auto retina = smc::build_retina(25, 4.0, mode, rr);
  return smc::collect_variations(retina, input, smc::sample_motors(k, mr));
}

void BM_CollectVariations(benchmark::State& state) {
  auto rr = smc::make_stream(1, "retina");
  auto mr = smc::make_stream(1, "motors");
  const auto retina = smc::build_retina(25, 4.0, smc::ExcitationMode::quadratic, rr);
  const auto motors = smc::sample_motors(static_cast<std::size_t>(state.range(0)), mr);
  const smc::VisualInput edge = smc::TanhEdge{0.1, 0.05, 0.2, 5, 0};
  for (auto _ : state) benchmark::DoNotOptimize(smc::collect_variations(retina, edge, motors));
}
BENCHMARK(BM_CollectVariations)->Arg(500)->Arg(1000);

void BM_CharacterizeLinear(benchmark::State& state) {
  const auto batch = make_batch(smc::ExcitationMode::linear, smc::LinearGradient{0.03, 0.02, 0.5},
                                static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(smc::characterize_linear(batch));
}
BENCHMARK(BM_CharacterizeLinear)->Arg(500)->Arg(1000);

void BM_ProjectionError(benchmark::State& state) {
  const auto batch = make_batch(smc::ExcitationMode::quadratic, smc::TanhEdge{0.1, 0.05, 0.2, 5, 0},
                                static_cast<std::size_t>(state.range(0)));
  const Eigen::MatrixXd y = smc::pca_project(batch.d_s, 1);
  for (auto _ : state) benchmark::DoNotOptimize(smc::projection_error(batch.d_s, y));
}
BENCHMARK(BM_ProjectionError)->Arg(500)->Arg(1000);

void BM_CcaProject(benchmark::State& state) {
  const auto batch = make_batch(smc::ExcitationMode::quadratic, smc::TanhEdge{0.1, 0.05, 0.2, 5, 0}, 500);
  const smc::CcaConfig config;
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rng = smc::make_stream(1, "cca");
    benchmark::DoNotOptimize(smc::cca_project(batch.d_s, p, config, rng));
  }
}
BENCHMARK(BM_CcaProject)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
