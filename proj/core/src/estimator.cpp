#include "cpmcmc/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>

#include "cpmcmc/errors.hpp"

namespace cpmcmc {

namespace {

std::vector<double> cloud_estimands(const Model& model, const WeightedCloud& cloud) {
  std::vector<double> acc;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const std::vector<double> e = model.estimands(cloud.points[i]);
    if (acc.empty()) acc.assign(e.size(), 0.0);
    for (std::size_t j = 0; j < e.size(); ++j) acc[j] += cloud.weights[i] * e[j];
  }
  return acc;
}

void push_column(std::vector<std::vector<double>>& mat, const std::vector<double>& col) {
  if (mat.empty()) mat.resize(col.size());
  for (std::size_t j = 0; j < col.size(); ++j) mat[j].push_back(col[j]);
}

void check_run_config(const CoupledRunConfig& config) {
  if (config.n_particles < 2) throw config_error("coupled run: need at least 2 particles");
  if (!(config.rho >= 0.0 && config.rho <= 1.0))
    throw config_error("coupled run: rho outside [0, 1]");
  if (config.min_steps < 1) throw config_error("coupled run: min_steps must be positive");
  if (config.max_steps < config.min_steps)
    throw config_error("coupled run: max_steps below min_steps");
}

struct StatMatrices {
  const std::vector<std::vector<double>>* h = nullptr;
  const std::vector<std::vector<double>>* h_bar = nullptr;
};

StatMatrices pick_source(const CoupledRun& run, std::size_t statistic, StatSource source) {
  StatMatrices m;
  m.h = source == StatSource::rao_blackwell ? &run.h : &run.h_path;
  m.h_bar = source == StatSource::rao_blackwell ? &run.h_bar : &run.h_path_bar;
  if (statistic >= m.h->size()) throw config_error("estimator: statistic index out of range");
  return m;
}

// Nearest-rank 90th percentile; 1 when no meeting times are available.
std::size_t tau_percentile_90(std::vector<std::size_t> taus) {
  if (taus.empty()) return 1;
  std::sort(taus.begin(), taus.end());
  const std::size_t rank =
      static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(taus.size())));
  return taus[std::max<std::size_t>(rank, 1) - 1];
}

}  // namespace

CoupledRun run_coupled_chain(const Model& model, const TemperingSchedule& schedule,
                             const CoupledRunConfig& config, std::uint64_t seed,
                             std::size_t replicate) {
  check_run_config(config);
  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&]() {
    const auto now = std::chrono::steady_clock::now();
    if (config.deadline && now >= *config.deadline) return true;
    if (config.time_budget_seconds > 0.0) {
      const std::chrono::duration<double> elapsed = now - start;
      if (elapsed.count() >= config.time_budget_seconds) return true;
    }
    return false;
  };

  const RngStream rep = RngStream(seed).derive(replicate);
  const bool require_z = config.rho > 0.0;
  const std::size_t np = config.n_particles;
  const double frac = config.resample_frac;

  CoupledRun run;
  run.replicate = replicate;

  ChainState chain = smc_proposal(model, schedule, np, frac, rep.derive(0));
  ChainState chain_bar;

  auto record = [&](std::size_t t) {
    push_column(run.h, cloud_estimands(model, chain.cloud));
    push_column(run.h_bar, cloud_estimands(model, chain_bar.cloud));
    push_column(run.h_path, model.estimands(chain.path.back()));
    push_column(run.h_path_bar, model.estimands(chain_bar.path.back()));
    run.steps = t;
  };
  auto note_meeting = [&](std::size_t t) {
    if (!run.met && states_met(model, chain, chain_bar, require_z)) {
      run.met = true;
      run.tau = t;
      // From the meeting time on, the pair moves as one; copying makes the
      // invariant h_bar(t) == h(t) for t >= tau hold bitwise.
      chain_bar = chain;
    }
  };

  std::size_t t = 0;
  run.completed = true;
  while (true) {
    if (run.met && t >= config.min_steps) break;
    if (t >= config.max_steps || out_of_time()) {
      run.completed = false;
      break;
    }
    ++t;
    const RngStream step = rep.derive(t);
    const bool use_pimh = step.derive(0).uniform() < config.rho;
    const RngStream kernel = step.derive(1);
    if (run.met) {
      if (use_pimh)
        pimh_step_single(model, schedule, np, frac, chain, kernel);
      else
        csmc_step_single(model, schedule, np, frac, chain, kernel);
      chain_bar = chain;
    } else if (t == 1) {
      // First transition establishes the one-step lag: the trailing chain
      // takes the untransformed value its partner moves away from.
      if (use_pimh) {
        ChainState proposal = smc_proposal(model, schedule, np, frac, kernel.derive(0));
        const double u = kernel.derive(1).uniform();
        chain_bar = proposal;
        if (pimh_accept(chain.log_z, proposal.log_z, u)) chain = std::move(proposal);
      } else {
        chain_bar = chain;
        csmc_step_single(model, schedule, np, frac, chain, kernel);
      }
      note_meeting(t);
    } else {
      if (use_pimh)
        coupled_pimh_step(model, schedule, np, frac, chain, chain_bar, kernel);
      else
        coupled_csmc_step(model, schedule, np, frac, chain, chain_bar, kernel);
      note_meeting(t);
    }
    record(t);
  }

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  run.wall_time_s = elapsed.count();
  return run;
}

std::vector<CoupledRun> run_replicates(const Model& model, const TemperingSchedule& schedule,
                                       const CoupledRunConfig& config, std::uint64_t seed,
                                       std::size_t replicates, std::size_t workers) {
  check_run_config(config);
  std::vector<CoupledRun> runs(replicates);
  if (replicates == 0) return runs;
  workers = std::max<std::size_t>(1, std::min(workers, replicates));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
    while (true) {
      const std::size_t r = next.fetch_add(1);
      if (r >= replicates) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        runs[r] = run_coupled_chain(model, schedule, config, seed, r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return runs;
}

double h_hat_k(const CoupledRun& run, std::size_t statistic, std::size_t k, StatSource source) {
  if (!run.completed || !run.met)
    throw config_error("estimator: incomplete run, no unbiased readout");
  if (k < 1 || k > run.steps) throw config_error("estimator: burn-in outside recorded steps");
  const StatMatrices m = pick_source(run, statistic, source);
  // Correction terms accumulate separately, mirroring h_bar_k_l, so the
  // l == k reduction of the time-averaged estimator holds bitwise.
  double corr = 0.0;
  for (std::size_t t = k + 1; t + 1 <= run.tau; ++t)
    corr += (*m.h)[statistic][t - 1] - (*m.h_bar)[statistic][t - 1];
  return (*m.h)[statistic][k - 1] + corr;
}

double h_bar_k_l(const CoupledRun& run, std::size_t statistic, std::size_t k, std::size_t l,
                 StatSource source) {
  if (!run.completed || !run.met)
    throw config_error("estimator: incomplete run, no unbiased readout");
  if (k < 1 || k > l) throw config_error("estimator: need 1 <= k <= l");
  if (l > run.steps) throw config_error("estimator: window end outside recorded steps");
  const StatMatrices m = pick_source(run, statistic, source);
  const double span = static_cast<double>(l - k + 1);
  double avg = 0.0;
  for (std::size_t t = k; t <= l; ++t) avg += (*m.h)[statistic][t - 1];
  avg /= span;
  double corr = 0.0;
  for (std::size_t t = k + 1; t + 1 <= run.tau; ++t) {
    const double tent = std::min(span, static_cast<double>(t - k)) / span;
    corr += tent * ((*m.h)[statistic][t - 1] - (*m.h_bar)[statistic][t - 1]);
  }
  return avg + corr;
}

std::size_t default_burn_in(const std::vector<CoupledRun>& runs) {
  std::vector<std::size_t> taus;
  for (const auto& run : runs)
    if (run.met) taus.push_back(run.tau);
  return tau_percentile_90(std::move(taus));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw config_error("normal_quantile: p outside (0, 1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

Aggregate aggregate(const std::vector<double>& values, double confidence) {
  if (values.size() < 2) throw config_error("aggregate: need at least 2 values");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw config_error("aggregate: confidence outside (0, 1)");
  Aggregate out;
  out.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(out.count);
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.variance = ss / static_cast<double>(out.count - 1);
  out.std_error = std::sqrt(out.variance / static_cast<double>(out.count));
  const double z = normal_quantile(0.5 + confidence / 2.0);
  out.ci_lo = out.mean - z * out.std_error;
  out.ci_hi = out.mean + z * out.std_error;
  return out;
}

IactResult iact(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 10) throw config_error("iact: need at least 10 observations");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  auto autocov = [&](std::size_t lag) {
    double c = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) c += (series[i] - mean) * (series[i + lag] - mean);
    return c / static_cast<double>(n);
  };
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) return {1.0, true};
  // Sum of paired autocorrelations, truncated where the initial positive
  // sequence ends and forced nonincreasing.
  double total = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; 2 * m + 1 < n; ++m) {
    double gamma = (autocov(2 * m) + autocov(2 * m + 1)) / c0;
    if (gamma <= 0.0) break;
    gamma = std::min(gamma, prev);
    total += gamma;
    prev = gamma;
  }
  return {std::max(0.0, 2.0 * total - 1.0), false};
}

std::vector<VarianceTimeRow> variance_time_curve(const std::vector<CoupledRun>& runs,
                                                 std::size_t statistic,
                                                 const std::vector<std::size_t>& l_grid,
                                                 StatSource source) {
  std::vector<VarianceTimeRow> rows;
  rows.reserve(l_grid.size());
  for (const std::size_t l : l_grid) {
    VarianceTimeRow row;
    row.l = l;
    std::vector<const CoupledRun*> usable;
    for (const auto& run : runs)
      if (run.completed && run.met && run.steps >= l) usable.push_back(&run);
    if (usable.size() < 2 || l < 1) {
      row.flagged = true;
      rows.push_back(row);
      continue;
    }
    // Per-run cost of a hypothetical run stopped at max(tau, l), prorated
    // from the observed cost per step.
    double mean_time = 0.0;
    for (const CoupledRun* run : usable) {
      const double per_step = run->wall_time_s / static_cast<double>(run->steps);
      mean_time += per_step * static_cast<double>(std::max(run->tau, l));
    }
    mean_time /= static_cast<double>(usable.size());

    std::vector<std::size_t> k_grid;
    for (std::size_t k = 1; k <= std::min<std::size_t>(l, 100); ++k) k_grid.push_back(k);
    std::vector<std::size_t> taus;
    for (const CoupledRun* run : usable) taus.push_back(run->tau);
    const std::size_t k_default = tau_percentile_90(std::move(taus));
    if (k_default <= l) k_grid.push_back(k_default);

    double best_var = std::numeric_limits<double>::infinity();
    std::size_t best_k = k_grid.front();
    for (const std::size_t k : k_grid) {
      std::vector<double> values;
      values.reserve(usable.size());
      for (const CoupledRun* run : usable)
        values.push_back(h_bar_k_l(*run, statistic, k, l, source));
      const Aggregate agg = aggregate(values, 0.95);
      if (agg.variance < best_var) {
        best_var = agg.variance;
        best_k = k;
      }
    }
    row.k = best_k;
    row.variance = best_var;
    row.mean_time_s = mean_time;
    row.variance_times_time = best_var * mean_time;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cpmcmc
