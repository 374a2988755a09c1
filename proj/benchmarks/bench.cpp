#include <benchmark/benchmark.h>

#include "predshare/contracts.hpp"
#include "predshare/empirical.hpp"
#include "predshare/worlds.hpp"

namespace {

using namespace predshare;

CorrelationModelSpec two_point_spec() {
  CorrelationModelSpec spec;
  spec.alpha = 0.7;
  spec.beta = 0.6;
  const double cap = theta_max(spec.alpha, spec.beta);
  spec.theta_prior.support = {{0.0, 0.5}, {cap, 0.5}};
  spec.utility = significant_action(1.0, 0.7555);
  return spec;
}

void BM_JointFromCorrelation(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_from_correlation(0.7, 0.6, 0.3));
  }
}
BENCHMARK(BM_JointFromCorrelation);

void BM_EnumerateEquilibria(benchmark::State& state) {
  const auto contract = static_cast<Contract>(state.range(0));
  const auto game = build_game(ModelSpec{two_point_spec()}, contract);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_pure_equilibria(game));
  }
}
BENCHMARK(BM_EnumerateEquilibria)->DenseRange(0, 3);

void BM_Classify(benchmark::State& state) {
  const ModelSpec model{two_point_spec()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(model));
  }
}
BENCHMARK(BM_Classify);

void BM_ValidateFamily(benchmark::State& state) {
  WorldFamily family;
  family.alpha = 0.7;
  family.beta = 0.6;
  const double cap = theta_max(family.alpha, family.beta);
  family.theta_prior.support = {{0.0, 0.5}, {cap, 0.5}};
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_family(family, samples, 1));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(samples));
}
BENCHMARK(BM_ValidateFamily)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_CostSweep(benchmark::State& state) {
  SyntheticDatasetSpec spec;
  spec.n_train = 600;
  spec.n_test = 200;
  spec.n_valid = 200;
  spec.d = 20;
  spec.seed = 5;
  const auto data = generate_dataset(spec);
  const auto grid = make_cost_grid(2.5, 0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cost_sweep(data, grid));
  }
}
BENCHMARK(BM_CostSweep)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
