#pragma once

#include <cmath>
#include <vector>

#include "cpmcmc/model.hpp"

namespace cpmcmc::testing {

// Scalar Gaussian-mean model with closed-form everything: prior
// N(m0, v0), observations N(x, s2) with known s2. Tempered posteriors
// stay Gaussian, so the evidence, any tempered moment, and the posterior
// mean are available analytically for oracle checks.
struct ConjugateGaussianConfig {
  double m0 = 0.0;
  double v0 = 1.0;
  double s2 = 1.0;
  std::vector<double> y;
  bool exact_kernel = false;  // true: draw the tempered posterior directly
  double rw_scale = 1.0;      // random-walk proposal scale otherwise
};

struct ConjugateState {
  double x = 0.0;
  double log_lik = 0.0;
};

class ConjugateGaussianModel : public Model {
 public:
  explicit ConjugateGaussianModel(ConjugateGaussianConfig config);

  std::string name() const override { return "conjugate"; }
  Point sample_prior(RngStream rng) const override;
  double log_likelihood(const Point& x) const override;
  Point inner_step(const Point& x, double alpha, RngStream rng) const override;
  std::vector<double> summary_stats(const Point& x) const override;
  std::vector<double> estimands(const Point& x) const override;
  std::vector<std::string> estimand_names() const override;
  std::optional<double> log_likelihood_sup() const override;
  std::string serialize(const Point& x) const override;

  double log_likelihood_value(double x) const;

  // Tempered posterior N(mean, var) at exponent alpha.
  double posterior_mean(double alpha) const;
  double posterior_var(double alpha) const;
  // Exact log evidence of the alpha-tempered model.
  double log_evidence(double alpha) const;

  const ConjugateGaussianConfig& config() const { return config_; }

 private:
  ConjugateGaussianConfig config_;
  double sum_y_ = 0.0;
  double sum_y2_ = 0.0;
};

// Flat-likelihood model: every state has the same likelihood value, so
// evidence estimates are exact and independence proposals always accept.
struct ConstantModelConfig {
  double log_lik = 0.0;
};

class ConstantModel : public Model {
 public:
  explicit ConstantModel(ConstantModelConfig config) : config_(config) {}

  std::string name() const override { return "constant"; }
  Point sample_prior(RngStream rng) const override;
  double log_likelihood(const Point&) const override { return config_.log_lik; }
  Point inner_step(const Point& x, double alpha, RngStream rng) const override;
  std::vector<double> summary_stats(const Point& x) const override;
  std::vector<double> estimands(const Point& x) const override;
  std::vector<std::string> estimand_names() const override { return {"x"}; }
  std::optional<double> log_likelihood_sup() const override { return config_.log_lik; }
  std::string serialize(const Point& x) const override;

 private:
  ConstantModelConfig config_;
};

}  // namespace cpmcmc::testing
