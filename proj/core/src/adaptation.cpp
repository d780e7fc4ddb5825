#include "cpmcmc/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cpmcmc/errors.hpp"
#include "cpmcmc/resampling.hpp"

namespace cpmcmc {

void TemperingSchedule::validate() const {
  if (!(alpha0 >= 0.0 && alpha0 < 1.0))
    throw config_error("TemperingSchedule: alpha0 outside [0, 1)");
  if (alphas.size() != mcmc_counts.size())
    throw config_error("TemperingSchedule: alphas and mcmc_counts lengths differ");
  double prev = alpha0;
  for (double a : alphas) {
    if (!(a > prev && a < 1.0))
      throw config_error("TemperingSchedule: exponents must be strictly increasing in (alpha0, 1)");
    prev = a;
  }
  for (std::size_t m : mcmc_counts)
    if (m < 1) throw config_error("TemperingSchedule: sweep counts must be positive");
}

std::string TemperingSchedule::to_json() const {
  nlohmann::json j;
  std::vector<double> all;
  all.reserve(alphas.size() + 1);
  all.push_back(alpha0);
  all.insert(all.end(), alphas.begin(), alphas.end());
  j["alphas"] = all;
  j["mcmc_counts"] = mcmc_counts;
  j["model"] = model_name;
  j["seed"] = seed;
  return j.dump(2);
}

TemperingSchedule TemperingSchedule::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(std::string("schedule parse error: ") + e.what());
  }
  TemperingSchedule s;
  try {
    const auto all = j.at("alphas").get<std::vector<double>>();
    if (all.empty()) throw config_error("schedule: alphas must contain the starting exponent");
    s.alpha0 = all.front();
    s.alphas.assign(all.begin() + 1, all.end());
    s.mcmc_counts = j.at("mcmc_counts").get<std::vector<std::size_t>>();
    s.model_name = j.at("model").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("schedule field error: ") + e.what());
  }
  s.validate();
  return s;
}

void TemperingSchedule::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open schedule file for writing: " + path);
  out << to_json() << "\n";
}

TemperingSchedule TemperingSchedule::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open schedule file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

double next_temperature(const std::vector<double>& log_liks, double alpha_prev,
                        double threshold_frac) {
  if (log_liks.empty()) throw config_error("next_temperature: no particles");
  if (!(alpha_prev >= 0.0 && alpha_prev < 1.0))
    throw config_error("next_temperature: alpha_prev outside [0, 1)");
  if (!(threshold_frac >= 0.0 && threshold_frac <= 1.0))
    throw config_error("next_temperature: threshold fraction outside [0, 1]");
  const double n = static_cast<double>(log_liks.size());
  const double threshold = threshold_frac * n;

  const auto ess_at = [&](double alpha) {
    std::vector<double> logw(log_liks.size());
    for (std::size_t i = 0; i < log_liks.size(); ++i)
      logw[i] = (alpha - alpha_prev) * log_liks[i];
    return ess_log(logw);
  };

  if (ess_at(1.0) >= threshold) return 1.0;

  // ESS decreases from n as the exponent grows; bisect for the crossing.
  double lo = alpha_prev;
  double hi = 1.0;
  for (int it = 0; it < 60 && (hi - lo) > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ess_at(mid) >= threshold)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// Pearson correlation across particles; empty optional when either side
// has zero sample variance.
std::optional<double> correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

std::vector<std::vector<double>> stat_matrix(const Model& model,
                                             const std::vector<Point>& particles) {
  std::vector<std::vector<double>> stats;
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const std::vector<double> s = model.summary_stats(particles[i]);
    if (i == 0) stats.assign(s.size(), std::vector<double>(particles.size()));
    if (s.size() != stats.size()) throw numerical_error("summary_stats: inconsistent length");
    for (std::size_t j = 0; j < s.size(); ++j) stats[j][i] = s[j];
  }
  return stats;
}

}  // namespace

std::size_t select_mcmc_count(const Model& model, std::vector<Point>& particles, double alpha,
                              double corr_threshold, std::size_t max_sweeps, RngStream rng) {
  if (particles.empty()) throw config_error("select_mcmc_count: no particles");
  if (max_sweeps < 1) throw config_error("select_mcmc_count: max_sweeps must be positive");
  const std::vector<std::vector<double>> pre = stat_matrix(model, particles);

  for (std::size_t sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (std::size_t i = 0; i < particles.size(); ++i)
      particles[i] = model.inner_step(particles[i], alpha, rng.derive(sweep, i));
    const std::vector<std::vector<double>> cur = stat_matrix(model, particles);
    double max_corr = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t j = 0; j < pre.size(); ++j) {
      const auto c = correlation(pre[j], cur[j]);
      if (!c) continue;
      any = true;
      max_corr = std::max(max_corr, *c);
    }
    if (!any || max_corr <= corr_threshold) return sweep;
  }
  return max_sweeps;
}

RejectionInit select_alpha0_rejection(const Model& model, std::size_t n_target, double rate,
                                      RngStream rng) {
  if (n_target == 0) throw config_error("select_alpha0_rejection: n_target must be positive");
  if (!(rate > 0.0 && rate <= 1.0))
    throw config_error("select_alpha0_rejection: rate outside (0, 1]");
  const auto sup = model.log_likelihood_sup();
  if (!sup)
    throw config_error("select_alpha0_rejection: model has no likelihood supremum");

  const std::size_t n_draw =
      static_cast<std::size_t>(std::ceil(static_cast<double>(n_target) / rate));
  std::vector<Point> pool(n_draw);
  std::vector<double> threshold(n_draw);
  std::size_t below_sup = 0;
  for (std::size_t i = 0; i < n_draw; ++i) {
    RngStream s = rng.derive(i);
    pool[i] = model.sample_prior(s.derive(0));
    const double b = std::min(model.log_likelihood(pool[i]) - *sup, 0.0);
    if (b < 0.0) {
      threshold[i] = std::log(s.derive(1).uniform()) / b;
      ++below_sup;
    } else {
      threshold[i] = std::numeric_limits<double>::infinity();
    }
  }

  RejectionInit out;
  if (below_sup < n_target) {
    // Not enough particles strictly below the supremum to rank; start the
    // ladder at exponent zero with plain prior draws.
    out.alpha0 = 0.0;
    out.particles.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_target));
    return out;
  }

  std::vector<std::size_t> order(n_draw);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return threshold[a] > threshold[b];
  });
  const double cut = threshold[order[n_target - 1]];
  out.alpha0 = std::clamp(cut, 0.0, std::nextafter(1.0, 0.0));
  out.particles.reserve(n_target);
  for (std::size_t i = 0; i < n_target; ++i) out.particles.push_back(pool[order[i]]);
  return out;
}

TemperingSchedule adapt(const Model& model, const AdaptationConfig& config, std::uint64_t seed) {
  if (config.n_pilot < 2) throw config_error("adapt: need at least two pilot particles");
  RngStream root(seed);

  std::vector<Point> particles;
  TemperingSchedule schedule;
  schedule.model_name = model.name();
  schedule.seed = seed;

  if (config.rejection_rate) {
    RejectionInit init =
        select_alpha0_rejection(model, config.n_pilot, *config.rejection_rate, root.derive(0));
    schedule.alpha0 = init.alpha0;
    particles = std::move(init.particles);
  } else {
    schedule.alpha0 = 0.0;
    particles.resize(config.n_pilot);
    for (std::size_t i = 0; i < config.n_pilot; ++i)
      particles[i] = model.sample_prior(root.derive(0, i));
  }

  double alpha_prev = schedule.alpha0;
  for (std::size_t stage = 1; stage <= config.max_stages; ++stage) {
    std::vector<double> ell(particles.size());
    for (std::size_t i = 0; i < particles.size(); ++i) ell[i] = model.log_likelihood(particles[i]);

    const double alpha = next_temperature(ell, alpha_prev, config.ess_threshold);
    if (alpha >= 1.0) {
      schedule.validate();
      return schedule;
    }

    std::vector<double> logw(particles.size());
    for (std::size_t i = 0; i < particles.size(); ++i) logw[i] = (alpha - alpha_prev) * ell[i];
    const std::vector<std::size_t> parents = multinomial_resample(
        ProbabilityVector::from_log_weights(logw), particles.size(), root.derive(1, stage, 0));
    std::vector<Point> resampled(particles.size());
    for (std::size_t i = 0; i < particles.size(); ++i) resampled[i] = particles[parents[i]];
    particles = std::move(resampled);

    const std::size_t sweeps = select_mcmc_count(model, particles, alpha, config.corr_threshold,
                                                 config.max_sweeps, root.derive(1, stage, 1));
    schedule.alphas.push_back(alpha);
    schedule.mcmc_counts.push_back(sweeps);
    alpha_prev = alpha;
  }
  throw numerical_error("adapt: stage cap reached without the ladder reaching 1");
}

}  // namespace cpmcmc
