#pragma once

#include <Eigen/Dense>

#include "cpmcmc/ggm/graph.hpp"
#include "cpmcmc/ggm/gwishart.hpp"
#include "cpmcmc/model.hpp"

namespace cpmcmc {

struct GgmConfig {
  Eigen::MatrixXd U;  // scatter Y^T Y, p x p
  double n = 0.0;     // observation count
  double delta = 3.0;
  Eigen::MatrixXd D;  // prior rate matrix; identity if left empty
};

struct GgmState {
  Graph graph;
  Eigen::MatrixXd K;
  double log_lik = 0.0;
};

// Gaussian log likelihood of n zero-mean observations with scatter U
// under precision K.
double ggm_loglik(const Eigen::MatrixXd& K, const Eigen::MatrixXd& U, double n);

// Node permutation sending i to position p-2 and j to p-1 (the last
// pair), all others order-preserving: order[k] is the original node at
// new position k.
std::vector<std::size_t> reorder_permutation(std::size_t p, std::size_t i, std::size_t j);
Eigen::MatrixXd apply_permutation(const Eigen::MatrixXd& m, const std::vector<std::size_t>& order);
Graph apply_permutation(const Graph& g, const std::vector<std::size_t>& order);
Eigen::MatrixXd revert_permutation(const Eigen::MatrixXd& m, const std::vector<std::size_t>& order);

// Gaussian graphical model with the size-based graph prior and G-Wishart
// prior on the precision. State is the pair (K, G); the inner kernel is
// the double-reversible-jump single-edge move with an exchange-style
// construction that never evaluates G-Wishart normalizing constants, and
// it refreshes K from its posterior conditional each step. Tempering by
// exponent alpha substitutes (alpha n, alpha U). Meeting detection reads
// the canonical graph serialization.
class GgmModel : public Model {
 public:
  explicit GgmModel(GgmConfig config);

  std::string name() const override { return "ggm"; }
  Point sample_prior(RngStream rng) const override;
  double log_likelihood(const Point& x) const override;
  Point inner_step(const Point& x, double alpha, RngStream rng) const override;
  std::vector<double> summary_stats(const Point& x) const override;
  std::vector<double> estimands(const Point& x) const override;
  std::vector<std::string> estimand_names() const override;
  std::optional<double> log_likelihood_sup() const override;
  std::string serialize(const Point& x) const override;

  const GgmConfig& config() const { return config_; }
  std::size_t nodes() const { return static_cast<std::size_t>(config_.U.rows()); }

 private:
  GgmConfig config_;
  std::optional<double> log_lik_sup_;
};

struct GgmSynthetic {
  std::vector<std::vector<double>> Y;  // n rows of p values
  Graph graph;
  Eigen::MatrixXd K;
};

// Synthetic dataset: random graph at the given edge density, precision
// from its G-Wishart prior with identity rate, rows drawn from the
// implied zero-mean Gaussian.
GgmSynthetic ggm_synthetic(std::size_t p, std::size_t n, double sparsity, std::uint64_t seed);

// Scatter matrix Y^T Y from row-major data.
Eigen::MatrixXd scatter_matrix(const std::vector<std::vector<double>>& rows);

}  // namespace cpmcmc
