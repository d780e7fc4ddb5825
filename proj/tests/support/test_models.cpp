#include "support/test_models.hpp"

#include <memory>

namespace cpmcmc::testing {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

const ConjugateState& conj(const Point& p) { return p.as<ConjugateState>(); }

double scalar(const Point& p) { return p.as<double>(); }

}  // namespace

ConjugateGaussianModel::ConjugateGaussianModel(ConjugateGaussianConfig config)
    : config_(std::move(config)) {
  for (double v : config_.y) {
    sum_y_ += v;
    sum_y2_ += v * v;
  }
}

double ConjugateGaussianModel::log_likelihood_value(double x) const {
  const double n = static_cast<double>(config_.y.size());
  const double rss = sum_y2_ - 2.0 * x * sum_y_ + n * x * x;
  return -0.5 * n * (kLog2Pi + std::log(config_.s2)) - rss / (2.0 * config_.s2);
}

double ConjugateGaussianModel::posterior_var(double alpha) const {
  const double n = static_cast<double>(config_.y.size());
  return 1.0 / (1.0 / config_.v0 + alpha * n / config_.s2);
}

double ConjugateGaussianModel::posterior_mean(double alpha) const {
  return posterior_var(alpha) * (config_.m0 / config_.v0 + alpha * sum_y_ / config_.s2);
}

double ConjugateGaussianModel::log_evidence(double alpha) const {
  const double n = static_cast<double>(config_.y.size());
  const double precision = 1.0 / config_.v0 + alpha * n / config_.s2;
  const double mu = (config_.m0 / config_.v0 + alpha * sum_y_ / config_.s2) / precision;
  const double log_c = -0.5 * alpha * n * (kLog2Pi + std::log(config_.s2)) -
                       alpha * sum_y2_ / (2.0 * config_.s2);
  return log_c - 0.5 * std::log(config_.v0) - 0.5 * std::log(precision) +
         0.5 * precision * mu * mu -
         config_.m0 * config_.m0 / (2.0 * config_.v0);
}

Point ConjugateGaussianModel::sample_prior(RngStream rng) const {
  ConjugateState state;
  state.x = config_.m0 + std::sqrt(config_.v0) * rng.normal();
  state.log_lik = log_likelihood_value(state.x);
  return Point::of(std::move(state));
}

double ConjugateGaussianModel::log_likelihood(const Point& x) const {
  return conj(x).log_lik;
}

Point ConjugateGaussianModel::inner_step(const Point& x, double alpha, RngStream rng) const {
  ConjugateState next = conj(x);
  if (config_.exact_kernel) {
    next.x = posterior_mean(alpha) + std::sqrt(posterior_var(alpha)) * rng.normal();
    next.log_lik = log_likelihood_value(next.x);
    return Point::of(std::move(next));
  }
  const double proposal = next.x + config_.rw_scale * rng.normal();
  const double u = rng.uniform();
  const double prop_ll = log_likelihood_value(proposal);
  const double log_prior_diff =
      (-(proposal - config_.m0) * (proposal - config_.m0) +
       (next.x - config_.m0) * (next.x - config_.m0)) /
      (2.0 * config_.v0);
  const double log_alpha = log_prior_diff + alpha * (prop_ll - next.log_lik);
  if (std::log(u) < log_alpha) {
    next.x = proposal;
    next.log_lik = prop_ll;
  }
  return Point::of(std::move(next));
}

std::vector<double> ConjugateGaussianModel::summary_stats(const Point& x) const {
  return {conj(x).log_lik, conj(x).x};
}

std::vector<double> ConjugateGaussianModel::estimands(const Point& x) const {
  return {conj(x).x};
}

std::vector<std::string> ConjugateGaussianModel::estimand_names() const { return {"x"}; }

std::optional<double> ConjugateGaussianModel::log_likelihood_sup() const {
  const double n = static_cast<double>(config_.y.size());
  if (n == 0.0) return 0.0;
  const double rss_min = sum_y2_ - sum_y_ * sum_y_ / n;
  return -0.5 * n * (kLog2Pi + std::log(config_.s2)) - rss_min / (2.0 * config_.s2);
}

std::string ConjugateGaussianModel::serialize(const Point& x) const {
  std::string out;
  detail::append_double(out, conj(x).x);
  return out;
}

Point ConstantModel::sample_prior(RngStream rng) const { return Point::of(rng.normal()); }

Point ConstantModel::inner_step(const Point&, double, RngStream rng) const {
  // The tempered posterior equals the prior at every alpha, so a fresh
  // prior draw is an exact (and maximally mixing) kernel.
  return Point::of(rng.normal());
}

std::vector<double> ConstantModel::summary_stats(const Point& x) const {
  return {config_.log_lik, scalar(x)};
}

std::vector<double> ConstantModel::estimands(const Point& x) const {
  return {scalar(x)};
}

std::string ConstantModel::serialize(const Point& x) const {
  std::string out;
  detail::append_double(out, scalar(x));
  return out;
}

}  // namespace cpmcmc::testing
