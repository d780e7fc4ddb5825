#include "cpmcmc/models/horseshoe.hpp"

#include <cmath>
#include <string>

#include "cpmcmc/errors.hpp"

namespace cpmcmc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double half_cauchy_draw(RngStream& rng) { return std::tan(0.5 * kPi * rng.uniform()); }

// Stepping-out slice sampler (unit width) for a log-density f; returns a
// draw from exp(f) given the current point v0.
template <typename F>
double slice_sample(double v0, const F& f, RngStream& rng) {
  constexpr double kWidth = 1.0;
  constexpr int kCap = 1000;
  const double log_y = f(v0) - rng.exponential();
  double lo = v0 - kWidth * rng.uniform();
  double hi = lo + kWidth;
  for (int i = 0; i < kCap && f(lo) > log_y; ++i) lo -= kWidth;
  for (int i = 0; i < kCap && f(hi) > log_y; ++i) hi += kWidth;
  for (int i = 0; i < kCap; ++i) {
    const double v = lo + (hi - lo) * rng.uniform();
    if (f(v) > log_y) return v;
    if (v < v0)
      lo = v;
    else
      hi = v;
  }
  return v0;
}

}  // namespace

HorseshoeModel::HorseshoeModel(HorseshoeConfig config) : config_(std::move(config)) {
  if (config_.W.rows() != config_.y.size())
    throw config_error("horseshoe: design and observation sizes disagree");
  if (config_.W.rows() < 1 || config_.W.cols() < 1)
    throw config_error("horseshoe: empty design matrix");
  wtw_ = config_.W.transpose() * config_.W;
  wty_ = config_.W.transpose() * config_.y;
  const std::size_t p = static_cast<std::size_t>(config_.W.cols());
  coef_index_ = std::min<std::size_t>(9, p - 1);
}

double HorseshoeModel::log_likelihood_value(const HorseshoeState& s) const {
  const double n = static_cast<double>(config_.y.size());
  const double rss = (config_.y - config_.W * s.beta).squaredNorm();
  return -0.5 * n * std::log(2.0 * kPi * s.sigma2) - 0.5 * rss / s.sigma2;
}

Point HorseshoeModel::sample_prior(RngStream rng) const {
  const std::size_t p = static_cast<std::size_t>(config_.W.cols());
  HorseshoeState s;
  const double t = half_cauchy_draw(rng);
  s.xi = t * t;
  s.eta.resize(p);
  for (std::size_t j = 0; j < p; ++j) {
    const double tj = half_cauchy_draw(rng);
    s.eta[j] = tj * tj;
  }
  s.sigma2 = 1.0 / rng.gamma(1.0);
  s.beta.resize(p);
  for (std::size_t j = 0; j < p; ++j)
    s.beta[j] = std::sqrt(s.sigma2 / (s.xi * s.eta[j])) * rng.normal();
  s.log_lik = log_likelihood_value(s);
  return Point::of(std::move(s));
}

double HorseshoeModel::log_likelihood(const Point& x) const {
  return x.as<HorseshoeState>().log_lik;
}

Point HorseshoeModel::inner_step(const Point& x, double alpha, RngStream rng) const {
  HorseshoeState s = x.as<HorseshoeState>();
  const std::size_t p = static_cast<std::size_t>(config_.W.cols());
  const double n_alpha = alpha * static_cast<double>(config_.y.size());

  // Local precisions: density in eta_j is proportional to
  // exp(-c eta)/(1+eta); slice sample v = log(eta) with the Jacobian term.
  for (std::size_t j = 0; j < p; ++j) {
    const double c = std::max(s.xi * s.beta[j] * s.beta[j] / (2.0 * s.sigma2), 1e-300);
    const auto logf = [c](double v) {
      const double e = std::exp(v);
      return v - c * e - std::log1p(e);
    };
    s.eta[j] = std::exp(slice_sample(std::log(s.eta[j]), logf, rng));
  }

  // Global precision: density proportional to xi^{(p-1)/2} exp(-d xi)/(1+xi).
  double weighted_sq = 0.0;
  for (std::size_t j = 0; j < p; ++j) weighted_sq += s.eta[j] * s.beta[j] * s.beta[j];
  {
    const double d = std::max(weighted_sq / (2.0 * s.sigma2), 1e-300);
    const double half_p1 = 0.5 * (static_cast<double>(p) + 1.0);
    const auto logf = [d, half_p1](double v) {
      const double e = std::exp(v);
      return half_p1 * v - d * e - std::log1p(e);
    };
    s.xi = std::exp(slice_sample(std::log(s.xi), logf, rng));
  }

  // Error variance: inverse gamma from the tempered residuals, the beta
  // prior, and the Gamma(1,1) prior on 1/sigma2.
  const double rss = (config_.y - config_.W * s.beta).squaredNorm();
  const double shape = 0.5 * (n_alpha + static_cast<double>(p)) + 1.0;
  const double rate = 1.0 + 0.5 * alpha * rss + 0.5 * s.xi * weighted_sq;
  s.sigma2 = rate / rng.gamma(shape);

  // Coefficients: Gaussian conditional with precision (alpha W'W + xi
  // diag(eta))/sigma2, solved through a Cholesky factor.
  Eigen::MatrixXd m = alpha * wtw_;
  for (std::size_t j = 0; j < p; ++j) m(j, j) += s.xi * s.eta[j];
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw numerical_error("horseshoe: coefficient precision not positive definite (xi=" +
                          std::to_string(s.xi) + ", sigma2=" + std::to_string(s.sigma2) + ")");
  const Eigen::VectorXd mean = llt.solve(alpha * wty_);
  Eigen::VectorXd z(p);
  for (std::size_t j = 0; j < p; ++j) z[j] = rng.normal();
  s.beta = mean + std::sqrt(s.sigma2) * llt.matrixU().solve(z);

  s.log_lik = log_likelihood_value(s);
  return Point::of(std::move(s));
}

std::vector<double> HorseshoeModel::summary_stats(const Point& x) const {
  const HorseshoeState& s = x.as<HorseshoeState>();
  double selected = 0.0;
  for (Eigen::Index j = 0; j < s.beta.size(); ++j)
    if (std::abs(s.beta[j]) > 0.01) selected += 1.0;
  return {s.log_lik, selected};
}

std::vector<double> HorseshoeModel::estimands(const Point& x) const {
  const HorseshoeState& s = x.as<HorseshoeState>();
  const double b = s.beta[static_cast<Eigen::Index>(coef_index_)];
  return {b + b * b};
}

std::vector<std::string> HorseshoeModel::estimand_names() const {
  return {"beta" + std::to_string(coef_index_ + 1) + "_plus_sq"};
}

std::string HorseshoeModel::serialize(const Point& x) const {
  const HorseshoeState& s = x.as<HorseshoeState>();
  std::string out;
  for (Eigen::Index j = 0; j < s.beta.size(); ++j) detail::append_double(out, s.beta[j]);
  for (Eigen::Index j = 0; j < s.eta.size(); ++j) detail::append_double(out, s.eta[j]);
  detail::append_double(out, s.sigma2);
  detail::append_double(out, s.xi);
  return out;
}

HorseshoeSimulation simulate_horseshoe_data(RngStream rng) {
  constexpr std::size_t d_y = 100;
  constexpr std::size_t p = 20;
  constexpr double sigma2 = 8.0;
  HorseshoeSimulation sim;
  sim.W.resize(d_y, p);
  for (std::size_t i = 0; i < d_y; ++i)
    for (std::size_t j = 0; j < p; ++j) sim.W(i, j) = rng.normal();
  sim.beta_star = Eigen::VectorXd::Zero(p);
  for (std::size_t j = 1; j <= 10; ++j)
    sim.beta_star[j - 1] = std::pow(2.0, (9.0 - static_cast<double>(j)) / 4.0);
  sim.y = sim.W * sim.beta_star;
  for (std::size_t i = 0; i < d_y; ++i) sim.y[i] += std::sqrt(sigma2) * rng.normal();
  return sim;
}

}  // namespace cpmcmc
