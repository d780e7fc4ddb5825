#include "cpmcmc/ggm/ggm.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cpmcmc/errors.hpp"

namespace cpmcmc {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

}  // namespace

double ggm_loglik(const Eigen::MatrixXd& K, const Eigen::MatrixXd& U, double n) {
  const Eigen::Index p = K.rows();
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success)
    throw numerical_error("ggm loglik: precision not positive definite");
  double log_det = 0.0;
  const Eigen::MatrixXd l = llt.matrixL();
  for (Eigen::Index i = 0; i < p; ++i) log_det += 2.0 * std::log(l(i, i));
  return -0.5 * n * static_cast<double>(p) * kLog2Pi + 0.5 * n * log_det -
         0.5 * K.cwiseProduct(U).sum();
}

std::vector<std::size_t> reorder_permutation(std::size_t p, std::size_t i, std::size_t j) {
  if (i >= j || j >= p) throw config_error("reorder: need i < j < p");
  std::vector<std::size_t> order;
  order.reserve(p);
  for (std::size_t k = 0; k < p; ++k)
    if (k != i && k != j) order.push_back(k);
  order.push_back(i);
  order.push_back(j);
  return order;
}

Eigen::MatrixXd apply_permutation(const Eigen::MatrixXd& m,
                                  const std::vector<std::size_t>& order) {
  const Eigen::Index p = m.rows();
  Eigen::MatrixXd out(p, p);
  for (Eigen::Index a = 0; a < p; ++a)
    for (Eigen::Index b = 0; b < p; ++b)
      out(a, b) = m(static_cast<Eigen::Index>(order[static_cast<std::size_t>(a)]),
                    static_cast<Eigen::Index>(order[static_cast<std::size_t>(b)]));
  return out;
}

Graph apply_permutation(const Graph& g, const std::vector<std::size_t>& order) {
  Graph out(g.nodes());
  for (std::size_t a = 0; a + 1 < g.nodes(); ++a)
    for (std::size_t b = a + 1; b < g.nodes(); ++b)
      if (g.has_edge(order[a], order[b])) out.set_edge(a, b, true);
  return out;
}

Eigen::MatrixXd revert_permutation(const Eigen::MatrixXd& m,
                                   const std::vector<std::size_t>& order) {
  const Eigen::Index p = m.rows();
  Eigen::MatrixXd out(p, p);
  for (Eigen::Index a = 0; a < p; ++a)
    for (Eigen::Index b = 0; b < p; ++b)
      out(static_cast<Eigen::Index>(order[static_cast<std::size_t>(a)]),
          static_cast<Eigen::Index>(order[static_cast<std::size_t>(b)])) = m(a, b);
  return out;
}

GgmModel::GgmModel(GgmConfig config) : config_(std::move(config)) {
  const Eigen::Index p = config_.U.rows();
  if (config_.U.cols() != p || p < 2) throw config_error("ggm: scatter matrix must be square, p >= 2");
  if (config_.n <= 0.0) throw config_error("ggm: need a positive observation count");
  if (!(config_.delta > 2.0)) throw config_error("ggm: delta must exceed 2");
  if (config_.D.size() == 0) config_.D = Eigen::MatrixXd::Identity(p, p);
  if (config_.D.rows() != p || config_.D.cols() != p)
    throw config_error("ggm: prior rate matrix size mismatch");
  // Likelihood supremum at the unrestricted maximum K = n U^{-1}, used by
  // rejection initialization; unavailable when the scatter is singular.
  Eigen::LLT<Eigen::MatrixXd> u_llt(config_.U);
  if (u_llt.info() == Eigen::Success) {
    double log_det_u = 0.0;
    const Eigen::MatrixXd l = u_llt.matrixL();
    for (Eigen::Index i = 0; i < p; ++i) log_det_u += 2.0 * std::log(l(i, i));
    const double dp = static_cast<double>(p);
    log_lik_sup_ = -0.5 * config_.n * dp * kLog2Pi +
                   0.5 * config_.n * (dp * std::log(config_.n) - log_det_u) -
                   0.5 * config_.n * dp;
  }
}

Point GgmModel::sample_prior(RngStream rng) const {
  const std::size_t p = nodes();
  RngStream graph_rng = rng.derive(0);
  Graph g = sample_size_prior(p, graph_rng);
  RngStream k_rng = rng.derive(1);
  Eigen::MatrixXd k = gwishart_sample(g, config_.delta, config_.D, k_rng);
  GgmState s{std::move(g), std::move(k), 0.0};
  s.log_lik = ggm_loglik(s.K, config_.U, config_.n);
  return Point::of(std::move(s));
}

double GgmModel::log_likelihood(const Point& x) const { return x.as<GgmState>().log_lik; }

Point GgmModel::inner_step(const Point& x, double alpha, RngStream rng) const {
  const GgmState& s = x.as<GgmState>();
  const std::size_t p = nodes();
  const Eigen::Index a = static_cast<Eigen::Index>(p) - 2;
  const Eigen::Index b = static_cast<Eigen::Index>(p) - 1;

  RngStream prop_rng = rng.derive(0);
  const GraphProposal prop = propose_graph(s.graph, prop_rng);
  const bool removing = s.graph.has_edge(prop.i, prop.j);

  const std::vector<std::size_t> order = reorder_permutation(p, prop.i, prop.j);
  const Graph g_r = apply_permutation(s.graph, order);
  const Graph gt_r = apply_permutation(prop.graph, order);
  const Eigen::MatrixXd d_r = apply_permutation(config_.D, order);
  const Eigen::MatrixXd dstar_r =
      apply_permutation(config_.D + alpha * config_.U, order);

  // The two G-Wishart draws sit on dedicated substreams so a coupled
  // partner consuming the same stream stays aligned draw by draw.
  RngStream k_rng = rng.derive(1);
  const Eigen::MatrixXd k_cur =
      gwishart_sample(g_r, config_.delta + alpha * config_.n, dstar_r, k_rng);
  RngStream kt_rng = rng.derive(2);
  const Eigen::MatrixXd k_til = gwishart_sample(gt_r, config_.delta, d_r, kt_rng);

  Eigen::LLT<Eigen::MatrixXd> k_llt(k_cur);
  Eigen::LLT<Eigen::MatrixXd> kt_llt(k_til);
  if (k_llt.info() != Eigen::Success || kt_llt.info() != Eigen::Success)
    throw numerical_error("ggm inner step: Cholesky of a refreshed precision failed");
  const Eigen::MatrixXd phi = k_llt.matrixU();
  const Eigen::MatrixXd phi_t = kt_llt.matrixU();

  const double theta = -dstar_r(a, b) * phi(a, a) / dstar_r(b, b);
  const double theta_t = -d_r(a, b) * phi_t(a, a) / d_r(b, b);
  const double z = rng.derive(3).normal();
  double phi_pr_ab;   // chain-side (a, b) factor entry after the move
  double chain_con;   // chain-side constrained value of that entry
  double aux_con;     // auxiliary-side constrained value
  double eps;
  if (!removing) {
    phi_pr_ab = theta + z / std::sqrt(dstar_r(b, b));
    // The edge is absent from the current graph, so the factor entry
    // already sits at its constrained value.
    chain_con = phi(a, b);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a; ++i) acc += phi_t(i, a) * phi_t(i, b);
    aux_con = -acc / phi_t(a, a);
    eps = 1.0;
  } else {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a; ++i) acc += phi(i, a) * phi(i, b);
    phi_pr_ab = -acc / phi(a, a);
    chain_con = phi_pr_ab;
    aux_con = phi_t(a, b);
    eps = -1.0;
  }

  Eigen::MatrixXd phi_pr = phi;
  phi_pr(a, b) = phi_pr_ab;
  const Eigen::MatrixXd k_pr = phi_pr.transpose() * phi_pr;

  // Both free entries are proposed from their exact conditionals, so their
  // contributions cancel against the exponent differences; the ratio that
  // survives reads only the constrained values, the two pivots, and the
  // two rate entries.
  const double log_r =
      size_prior_log_ratio(s.graph, prop.graph) + prop.log_q_ratio +
      eps * (0.5 * dstar_r(b, b) * (chain_con - theta) * (chain_con - theta) -
             0.5 * d_r(b, b) * (aux_con - theta_t) * (aux_con - theta_t) +
             std::log(phi(a, a)) - std::log(phi_t(a, a)) +
             0.5 * std::log(d_r(b, b)) - 0.5 * std::log(dstar_r(b, b)));

  const double u = rng.derive(4).uniform();
  const bool accept = std::log(u) < log_r;
  GgmState next{accept ? prop.graph : s.graph,
                revert_permutation(accept ? k_pr : k_cur, order), 0.0};
  next.log_lik = ggm_loglik(next.K, config_.U, config_.n);
  return Point::of(std::move(next));
}

std::vector<double> GgmModel::summary_stats(const Point& x) const {
  const GgmState& s = x.as<GgmState>();
  return {s.log_lik, static_cast<double>(s.graph.edge_count())};
}

std::vector<double> GgmModel::estimands(const Point& x) const {
  const GgmState& s = x.as<GgmState>();
  std::vector<double> out;
  out.reserve(s.graph.max_edges());
  for (std::size_t i = 0; i + 1 < s.graph.nodes(); ++i)
    for (std::size_t j = i + 1; j < s.graph.nodes(); ++j)
      out.push_back(s.graph.has_edge(i, j) ? 1.0 : 0.0);
  return out;
}

std::vector<std::string> GgmModel::estimand_names() const {
  std::vector<std::string> out;
  const std::size_t p = nodes();
  out.reserve(p * (p - 1) / 2);
  for (std::size_t i = 0; i + 1 < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      out.push_back("edge_" + std::to_string(i) + "_" + std::to_string(j));
  return out;
}

std::optional<double> GgmModel::log_likelihood_sup() const { return log_lik_sup_; }

std::string GgmModel::serialize(const Point& x) const {
  return x.as<GgmState>().graph.serialize();
}

GgmSynthetic ggm_synthetic(std::size_t p, std::size_t n, double sparsity, std::uint64_t seed) {
  if (p < 2 || n < 1) throw config_error("ggm synthetic: need p >= 2 and n >= 1");
  if (!(sparsity >= 0.0 && sparsity <= 1.0))
    throw config_error("ggm synthetic: sparsity outside [0, 1]");
  const RngStream root(seed);
  Graph g(p);
  RngStream edge_rng = root.derive(0);
  for (std::size_t i = 0; i + 1 < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (edge_rng.uniform() < sparsity) g.set_edge(i, j, true);
  RngStream k_rng = root.derive(1);
  const Eigen::Index pi = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd k = gwishart_sample(g, 3.0, Eigen::MatrixXd::Identity(pi, pi), k_rng);
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success)
    throw numerical_error("ggm synthetic: sampled precision not positive definite");
  RngStream y_rng = root.derive(2);
  GgmSynthetic out{{}, std::move(g), std::move(k)};
  out.Y.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    Eigen::VectorXd z(pi);
    for (Eigen::Index i = 0; i < pi; ++i) z[i] = y_rng.normal();
    const Eigen::VectorXd row = llt.matrixU().solve(z);
    out.Y.emplace_back(row.data(), row.data() + pi);
  }
  return out;
}

Eigen::MatrixXd scatter_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw config_error("scatter: no rows");
  const Eigen::Index p = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(p, p);
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != p) throw config_error("scatter: ragged rows");
    const Eigen::Map<const Eigen::VectorXd> v(row.data(), p);
    u += v * v.transpose();
  }
  return u;
}

}  // namespace cpmcmc
