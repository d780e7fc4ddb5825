#include "cpmcmc/models/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpmcmc/errors.hpp"

namespace cpmcmc {

namespace {

constexpr double kHalf = 10.0;  // hypercube half-width
constexpr double kLogSqrt2Pi = 0.9189385332046727;

bool in_support(const std::vector<double>& x) {
  for (double v : x)
    if (!(std::abs(v) <= kHalf)) return false;
  return true;
}

}  // namespace

MixtureModel::MixtureModel(MixtureConfig config) : config_(std::move(config)) {
  if (config_.d_x < 1) throw config_error("mixture: d_x must be positive");
  if (config_.y.empty()) throw config_error("mixture: no observations");
}

double MixtureModel::log_likelihood_value(const std::vector<double>& x) const {
  const double log_dx = std::log(static_cast<double>(config_.d_x));
  double total = 0.0;
  for (const double yi : config_.y) {
    // log of d_x^-1 sum_j N(yi | x_j, 1) via log-sum-exp
    double m = -std::numeric_limits<double>::infinity();
    for (const double xj : x) {
      const double d = yi - xj;
      m = std::max(m, -0.5 * d * d);
    }
    double acc = 0.0;
    for (const double xj : x) {
      const double d = yi - xj;
      acc += std::exp(-0.5 * d * d - m);
    }
    total += m + std::log(acc) - kLogSqrt2Pi - log_dx;
  }
  return total;
}

Point MixtureModel::sample_prior(RngStream rng) const {
  MixtureState s;
  s.x.resize(config_.d_x);
  for (auto& v : s.x) v = -kHalf + 2.0 * kHalf * rng.uniform();
  s.log_lik = log_likelihood_value(s.x);
  return Point::of(std::move(s));
}

double MixtureModel::log_likelihood(const Point& x) const {
  return x.as<MixtureState>().log_lik;
}

Point MixtureModel::inner_step(const Point& x, double alpha, RngStream rng) const {
  const MixtureState& s = x.as<MixtureState>();
  std::vector<double> prop(config_.d_x);
  for (std::size_t j = 0; j < config_.d_x; ++j) prop[j] = s.x[j] + rng.normal();
  const double u = rng.uniform();  // drawn unconditionally to keep streams aligned
  if (!in_support(prop)) return x;
  const double log_lik_prop = log_likelihood_value(prop);
  if (std::log(u) < alpha * (log_lik_prop - s.log_lik)) {
    MixtureState next;
    next.x = std::move(prop);
    next.log_lik = log_lik_prop;
    return Point::of(std::move(next));
  }
  return x;
}

std::vector<double> MixtureModel::summary_stats(const Point& x) const {
  const MixtureState& s = x.as<MixtureState>();
  double sq = 0.0;
  for (double v : s.x) sq += v * v;
  return {s.log_lik, std::sqrt(sq)};
}

std::vector<double> MixtureModel::estimands(const Point& x) const {
  const MixtureState& s = x.as<MixtureState>();
  double total = 0.0;
  for (double v : s.x) total += v + v * v;
  return {total};
}

std::vector<std::string> MixtureModel::estimand_names() const { return {"sum_plus_sumsq"}; }

std::optional<double> MixtureModel::log_likelihood_sup() const {
  // Envelope: each observation density is at most the Gaussian mode value.
  // Valid upper bound for rejection initialization, not attained.
  return -static_cast<double>(config_.y.size()) * kLogSqrt2Pi;
}

std::string MixtureModel::serialize(const Point& x) const {
  const MixtureState& s = x.as<MixtureState>();
  std::string out;
  for (double v : s.x) detail::append_double(out, v);
  return out;
}

std::vector<double> simulate_mixture_data(const std::vector<double>& x_star, std::size_t d_y,
                                          RngStream rng) {
  if (x_star.empty()) throw config_error("mixture simulate: empty location vector");
  std::vector<double> y(d_y);
  for (auto& yi : y) {
    const std::size_t j = rng.uniform_index(x_star.size());
    yi = x_star[j] + rng.normal();
  }
  return y;
}

}  // namespace cpmcmc
