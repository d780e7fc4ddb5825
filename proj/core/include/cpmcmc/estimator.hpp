#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpmcmc/coupled.hpp"

namespace cpmcmc {

struct CoupledRunConfig {
  std::size_t n_particles = 0;
  double resample_frac = 0.5;
  double rho = 0.0;             // per-step probability of the independence kernel
  std::size_t min_steps = 1;    // l; the run extends to max(meeting time, l)
  std::size_t max_steps = 100000;
  double time_budget_seconds = 0.0;  // 0 disables the budget
  // Optional shared deadline for a batch of replicates; runs not finished
  // by then stop early and are flagged incomplete.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Record of one coupled pair of chains. Statistic matrices are indexed
// [statistic][t - 1] for steps t = 1..steps; h holds weighted-cloud
// readouts, h_path single-path readouts.
struct CoupledRun {
  std::size_t replicate = 0;
  bool met = false;
  std::size_t tau = 0;  // meaningful only when met
  std::size_t steps = 0;
  double wall_time_s = 0.0;
  bool completed = false;
  std::vector<std::vector<double>> h;
  std::vector<std::vector<double>> h_bar;
  std::vector<std::vector<double>> h_path;
  std::vector<std::vector<double>> h_path_bar;
};

// Runs one coupled pair to completion: initialization by a fresh sampler
// sweep, a first transition that leaves the lagged chain one step behind,
// then shared-coin kernel selection until the chains have met and at
// least min_steps states are recorded.
CoupledRun run_coupled_chain(const Model& model, const TemperingSchedule& schedule,
                             const CoupledRunConfig& config, std::uint64_t seed,
                             std::size_t replicate);

// Replicated runs with a thread pool; per-replicate streams are derived
// from (seed, replicate), so results do not depend on the worker count.
std::vector<CoupledRun> run_replicates(const Model& model, const TemperingSchedule& schedule,
                                       const CoupledRunConfig& config, std::uint64_t seed,
                                       std::size_t replicates, std::size_t workers);

enum class StatSource { rao_blackwell, single_path };

// Single-start unbiased estimate: the state at step k plus the coupled
// correction sum up to the meeting time.
double h_hat_k(const CoupledRun& run, std::size_t statistic, std::size_t k,
               StatSource source = StatSource::rao_blackwell);

// Time-averaged unbiased estimate over steps k..l with the tent-weighted
// correction sum. Reduces to h_hat_k at l == k.
double h_bar_k_l(const CoupledRun& run, std::size_t statistic, std::size_t k, std::size_t l,
                 StatSource source = StatSource::rao_blackwell);

// Default burn-in: the 90th percentile of observed meeting times.
std::size_t default_burn_in(const std::vector<CoupledRun>& runs);

struct Aggregate {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

// Mean, sample variance, and a normal-theory confidence interval.
Aggregate aggregate(const std::vector<double>& values, double confidence);

// Standard normal quantile (Acklam's rational approximation).
double normal_quantile(double p);

struct IactResult {
  double value = 1.0;
  bool degenerate = false;
};

// Integrated autocorrelation time with the initial-monotone-sequence
// truncation; a constant series reports 1 with the degenerate flag set.
IactResult iact(const std::vector<double>& series);

struct VarianceTimeRow {
  std::size_t l = 0;
  std::size_t k = 0;
  double variance = 0.0;
  double mean_time_s = 0.0;
  double variance_times_time = 0.0;
  bool flagged = false;  // too few complete runs to estimate a variance
};

// For each l, grid-searches the burn-in minimizing across-run variance of
// the time-averaged estimator and reports variance times mean wall time.
// Incomplete runs are excluded; their count is surfaced by the caller.
std::vector<VarianceTimeRow> variance_time_curve(const std::vector<CoupledRun>& runs,
                                                 std::size_t statistic,
                                                 const std::vector<std::size_t>& l_grid,
                                                 StatSource source = StatSource::rao_blackwell);

}  // namespace cpmcmc
