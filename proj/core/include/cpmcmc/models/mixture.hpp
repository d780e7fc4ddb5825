#pragma once

#include <cstddef>
#include <vector>

#include "cpmcmc/model.hpp"

namespace cpmcmc {

struct MixtureConfig {
  std::size_t d_x = 2;
  std::vector<double> y;
};

struct MixtureState {
  std::vector<double> x;
  double log_lik = 0.0;
};

// Location-mixture likelihood: each observation is an equal-weight mixture
// of unit-variance Gaussians centered at the coordinates of x, with a
// uniform prior on the hypercube [-10, 10]^d_x. The posterior is
// multimodal by label symmetry. Inner kernel: random walk Metropolis with
// identity proposal covariance.
class MixtureModel : public Model {
 public:
  explicit MixtureModel(MixtureConfig config);

  std::string name() const override { return "mixture"; }
  Point sample_prior(RngStream rng) const override;
  double log_likelihood(const Point& x) const override;
  Point inner_step(const Point& x, double alpha, RngStream rng) const override;
  std::vector<double> summary_stats(const Point& x) const override;
  std::vector<double> estimands(const Point& x) const override;
  std::vector<std::string> estimand_names() const override;
  std::optional<double> log_likelihood_sup() const override;
  std::string serialize(const Point& x) const override;

  // Exposed for direct likelihood tests.
  double log_likelihood_value(const std::vector<double>& x) const;

  const MixtureConfig& config() const { return config_; }

 private:
  MixtureConfig config_;
};

// Observations drawn from the model's own likelihood at location x_star.
std::vector<double> simulate_mixture_data(const std::vector<double>& x_star, std::size_t d_y,
                                          RngStream rng);

}  // namespace cpmcmc
