#pragma once

#include <Eigen/Dense>

#include "cpmcmc/model.hpp"

namespace cpmcmc {

struct HorseshoeConfig {
  Eigen::MatrixXd W;  // design, d_y x p
  Eigen::VectorXd y;  // observations, d_y
};

struct HorseshoeState {
  Eigen::VectorXd beta;
  Eigen::VectorXd eta;  // local precisions, positive
  double sigma2 = 1.0;
  double xi = 1.0;  // global precision, positive
  double log_lik = 0.0;
};

// Linear regression with the horseshoe prior: beta_j ~ N(0, sigma2/(xi
// eta_j)), half-Cauchy priors on sqrt(xi) and sqrt(eta_j), Gamma(1,1) on
// 1/sigma2. The inner kernel is one blocked sweep updating eta, xi,
// sigma2, beta in that order; eta and xi move by stepping-out slice
// sampling on the log scale, sigma2 by its inverse-gamma conditional,
// beta by its Gaussian conditional. Tempering by exponent alpha
// substitutes (alpha n, sqrt(alpha) y, sqrt(alpha) W) into the
// conditionals.
class HorseshoeModel : public Model {
 public:
  explicit HorseshoeModel(HorseshoeConfig config);

  std::string name() const override { return "horseshoe"; }
  Point sample_prior(RngStream rng) const override;
  double log_likelihood(const Point& x) const override;
  Point inner_step(const Point& x, double alpha, RngStream rng) const override;
  std::vector<double> summary_stats(const Point& x) const override;
  std::vector<double> estimands(const Point& x) const override;
  std::vector<std::string> estimand_names() const override;
  std::string serialize(const Point& x) const override;

  double log_likelihood_value(const HorseshoeState& s) const;

  const HorseshoeConfig& config() const { return config_; }

 private:
  HorseshoeConfig config_;
  Eigen::MatrixXd wtw_;  // W^T W cached
  Eigen::VectorXd wty_;  // W^T y cached
  std::size_t coef_index_;  // which beta feeds the reported statistic
};

struct HorseshoeSimulation {
  Eigen::MatrixXd W;
  Eigen::VectorXd y;
  Eigen::VectorXd beta_star;
};

// Fixed simulation design: d_y = 100, p = 20, noise variance 8, the first
// ten coefficients decaying as 2^((9-j)/4) and the rest zero.
HorseshoeSimulation simulate_horseshoe_data(RngStream rng);

}  // namespace cpmcmc
