#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpmcmc/model.hpp"
#include "cpmcmc/rng.hpp"

namespace cpmcmc {

// Product of the pilot run: the tempering ladder and the per-stage inner
// kernel repeat counts that production runs replay verbatim.
struct TemperingSchedule {
  double alpha0 = 0.0;               // starting exponent, 0 unless rejection-initialized
  std::vector<double> alphas;        // intermediate exponents, strictly increasing in (alpha0, 1)
  std::vector<std::size_t> mcmc_counts;  // inner kernel sweeps per stage, same length as alphas
  std::string model_name;
  std::uint64_t seed = 0;

  std::size_t stages() const { return alphas.size(); }
  void validate() const;

  std::string to_json() const;
  static TemperingSchedule from_json(const std::string& text);
  void save(const std::string& path) const;
  static TemperingSchedule load(const std::string& path);
};

struct AdaptationConfig {
  std::size_t n_pilot = 10000;     // pilot particle count
  double ess_threshold = 0.8;      // fraction of n_pilot the ESS may drop to
  double corr_threshold = 0.95;    // stop adding sweeps once max correlation falls below this
  std::size_t max_sweeps = 100;    // cap on sweeps per stage
  std::size_t max_stages = 10000;  // safety cap on ladder length
  // When set, the starting exponent and initial particles come from
  // rejection sampling against the likelihood supremum at this expected
  // acceptance rate.
  std::optional<double> rejection_rate;
};

// Smallest exponent above alpha_prev at which the ESS of the incremental
// weights exp((alpha - alpha_prev) * log_lik) drops to threshold_frac * n.
// Returns 1 when the ESS at the endpoint still clears the threshold.
double next_temperature(const std::vector<double>& log_liks, double alpha_prev,
                        double threshold_frac);

// Applies inner kernel sweeps to the particles in place until the summary
// statistics decorrelate from their pre-mutation values, and returns the
// number of sweeps used. Statistics with zero sample variance on either
// side are excluded from the correlation maximum.
std::size_t select_mcmc_count(const Model& model, std::vector<Point>& particles, double alpha,
                              double corr_threshold, std::size_t max_sweeps, RngStream rng);

struct RejectionInit {
  double alpha0 = 0.0;
  std::vector<Point> particles;
};

// Draws ceil(n_target / rate) prior particles, computes each one's largest
// acceptable exponent log(u) / (log_lik - sup), and keeps the n_target
// with the highest thresholds; alpha0 is the smallest kept threshold,
// clamped to [0, 1). Falls back to exponent 0 with plain prior draws when
// fewer than n_target particles lie strictly below the supremum.
RejectionInit select_alpha0_rejection(const Model& model, std::size_t n_target, double rate,
                                      RngStream rng);

// Full pilot run: alternates temperature search, multinomial resampling,
// and sweep-count selection until the next temperature reaches 1. The
// terminal stage is not recorded.
TemperingSchedule adapt(const Model& model, const AdaptationConfig& config, std::uint64_t seed);

}  // namespace cpmcmc
