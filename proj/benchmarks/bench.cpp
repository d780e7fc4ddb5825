// Microbenchmarks for the hot paths: resampling kernels, one tempered
// sampler sweep, G-Wishart draws, and the graphical-model inner step.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "cpmcmc/adaptation.hpp"
#include "cpmcmc/ggm/ggm.hpp"
#include "cpmcmc/ggm/gwishart.hpp"
#include "cpmcmc/models/mixture.hpp"
#include "cpmcmc/resampling.hpp"
#include "cpmcmc/rng.hpp"
#include "cpmcmc/smc.hpp"

namespace {

using namespace cpmcmc;

ProbabilityVector random_probs(std::size_t n, RngStream& rng) {
  std::vector<double> w(n);
  for (double& x : w) x = rng.uniform();
  return ProbabilityVector::from_weights(std::move(w));
}

void bm_systematic(benchmark::State& state) {
  RngStream rng(1);
  const auto p = random_probs(static_cast<std::size_t>(state.range(0)), rng);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(systematic_resample(p, rng.derive(i++).uniform()));
  }
}
BENCHMARK(bm_systematic)->Arg(128)->Arg(1024);

void bm_conditional_systematic(benchmark::State& state) {
  RngStream rng(2);
  const auto p = random_probs(static_cast<std::size_t>(state.range(0)), rng);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditional_systematic_resample(p, rng.derive(i++)));
  }
}
BENCHMARK(bm_conditional_systematic)->Arg(128)->Arg(1024);

void bm_coupled_conditional(benchmark::State& state) {
  RngStream rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = random_probs(n, rng);
  const auto pbar = random_probs(n, rng);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(coupled_conditional_systematic(p, pbar, rng.derive(i++)));
  }
}
BENCHMARK(bm_coupled_conditional)->Arg(128)->Arg(1024);

void bm_maximal_indices(benchmark::State& state) {
  RngStream rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = random_probs(n, rng);
  const auto pbar = random_probs(n, rng);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximal_coupling_indices(p, pbar, rng.derive(i++)));
  }
}
BENCHMARK(bm_maximal_indices)->Arg(128)->Arg(1024);

void bm_smc_sweep_mixture(benchmark::State& state) {
  MixtureConfig mc;
  mc.y = simulate_mixture_data({-3.0, 0.0}, 100, RngStream(5));
  const MixtureModel model(std::move(mc));
  const TemperingSchedule schedule = adapt(model, {.n_pilot = 1000}, 6);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_smc(model, schedule, n, 0.5, RngStream(7).derive(i++)));
  }
  state.counters["stages"] = static_cast<double>(schedule.stages());
}
BENCHMARK(bm_smc_sweep_mixture)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

void bm_gwishart_sample(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  RngStream graph_rng(8);
  const Graph g = sample_size_prior(p, graph_rng);
  const Eigen::MatrixXd D = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p),
                                                      static_cast<Eigen::Index>(p));
  RngStream rng(9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gwishart_sample(g, 3.0, D, rng));
  }
}
BENCHMARK(bm_gwishart_sample)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

void bm_ggm_inner_step(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const GgmSynthetic data = ggm_synthetic(p, 50, 0.4, 10);
  GgmConfig gc;
  gc.U = scatter_matrix(data.Y);
  gc.n = 50.0;
  const GgmModel model(std::move(gc));
  Point x = model.sample_prior(RngStream(11));
  std::uint64_t i = 0;
  for (auto _ : state) {
    x = model.inner_step(x, 1.0, RngStream(12).derive(i++));
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(bm_ggm_inner_step)->Arg(5)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
