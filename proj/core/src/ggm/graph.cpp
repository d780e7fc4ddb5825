#include "cpmcmc/ggm/graph.hpp"

#include <cmath>

#include "cpmcmc/errors.hpp"
#include "cpmcmc/model.hpp"

namespace cpmcmc {

Graph::Graph(std::size_t p) : p_(p) {
  if (p < 2) throw config_error("graph: need at least 2 nodes");
  bits_.assign(p * (p - 1) / 2, false);
}

Graph Graph::complete(std::size_t p) {
  Graph g(p);
  g.bits_.assign(g.bits_.size(), true);
  g.n_edges_ = g.bits_.size();
  return g;
}

std::size_t Graph::index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= p_) throw config_error("graph: bad vertex pair");
  return i * (2 * p_ - i - 1) / 2 + (j - i - 1);
}

bool Graph::has_edge(std::size_t i, std::size_t j) const { return bits_[index(i, j)]; }

void Graph::set_edge(std::size_t i, std::size_t j, bool present) {
  const std::size_t k = index(i, j);
  if (bits_[k] != present) {
    bits_[k] = present;
    n_edges_ += present ? 1 : -1;
  }
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < p_; ++i)
    for (std::size_t j = i + 1; j < p_; ++j)
      if (bits_[index(i, j)]) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::non_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < p_; ++i)
    for (std::size_t j = i + 1; j < p_; ++j)
      if (!bits_[index(i, j)]) out.emplace_back(i, j);
  return out;
}

std::vector<std::size_t> Graph::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < p_; ++j)
    if (j != i && bits_[index(std::min(i, j), std::max(i, j))]) out.push_back(j);
  return out;
}

std::string Graph::serialize() const {
  std::string out;
  out.reserve(8 + (bits_.size() + 7) / 8);
  detail::append_u64(out, p_);
  unsigned char byte = 0;
  int filled = 0;
  for (const bool b : bits_) {
    byte = static_cast<unsigned char>((byte << 1) | (b ? 1 : 0));
    if (++filled == 8) {
      out.push_back(static_cast<char>(byte));
      byte = 0;
      filled = 0;
    }
  }
  if (filled) out.push_back(static_cast<char>(byte << (8 - filled)));
  return out;
}

namespace {

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

double size_prior_log_ratio(const Graph& g, const Graph& g_tilde) {
  if (g.nodes() != g_tilde.nodes()) throw config_error("size prior: node counts disagree");
  const double p = static_cast<double>(g.nodes());
  const double log_odds = std::log(p / (p + 1.0));
  const std::size_t m = g.max_edges();
  const double ne = static_cast<double>(g.edge_count());
  const double ne_tilde = static_cast<double>(g_tilde.edge_count());
  return (ne_tilde - ne) * log_odds -
         (log_binomial(m, g_tilde.edge_count()) - log_binomial(m, g.edge_count()));
}

Graph sample_size_prior(std::size_t p, RngStream& rng) {
  Graph g(p);
  const std::size_t m = g.max_edges();
  const double r = static_cast<double>(p) / (static_cast<double>(p) + 1.0);
  // Edge count by inversion of the truncated geometric.
  double total = 0.0;
  double term = 1.0;
  for (std::size_t k = 0; k <= m; ++k, term *= r) total += term;
  double target = rng.uniform() * total;
  std::size_t n_edges = m;
  term = 1.0;
  for (std::size_t k = 0; k <= m; ++k, term *= r) {
    target -= term;
    if (target <= 0.0) {
      n_edges = k;
      break;
    }
  }
  // Uniform edge subset of that size via a partial shuffle.
  std::vector<std::pair<std::size_t, std::size_t>> pool = g.non_edges();
  for (std::size_t k = 0; k < n_edges; ++k) {
    const std::size_t pick = k + rng.uniform_index(pool.size() - k);
    std::swap(pool[k], pool[pick]);
    g.set_edge(pool[k].first, pool[k].second, true);
  }
  return g;
}

GraphProposal propose_graph(const Graph& g, RngStream& rng) {
  const std::size_t m = g.max_edges();
  const std::size_t ne = g.edge_count();
  bool remove;
  double log_q_fwd;
  if (ne == 0 || ne == m) {
    remove = ne == m;
    log_q_fwd = -std::log(static_cast<double>(m));
  } else if (rng.uniform() < 0.5) {
    remove = true;
    log_q_fwd = std::log(0.5) - std::log(static_cast<double>(ne));
  } else {
    remove = false;
    log_q_fwd = std::log(0.5) - std::log(static_cast<double>(m - ne));
  }
  const auto pool = remove ? g.edges() : g.non_edges();
  const auto [i, j] = pool[rng.uniform_index(pool.size())];

  GraphProposal out{g, i, j, 0.0};
  out.graph.set_edge(i, j, !remove);
  const std::size_t ne_new = out.graph.edge_count();
  double log_q_rev;
  if (ne_new == 0 || ne_new == m)
    log_q_rev = -std::log(static_cast<double>(m));
  else if (remove)  // reverse move adds the edge back
    log_q_rev = std::log(0.5) - std::log(static_cast<double>(m - ne_new));
  else
    log_q_rev = std::log(0.5) - std::log(static_cast<double>(ne_new));
  out.log_q_ratio = log_q_rev - log_q_fwd;
  return out;
}

}  // namespace cpmcmc
