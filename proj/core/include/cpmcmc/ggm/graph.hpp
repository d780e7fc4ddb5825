#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cpmcmc/rng.hpp"

namespace cpmcmc {

// Undirected simple graph stored as the row-major upper-triangle bitset.
// That serialization is canonical and defines state equality for meeting
// detection.
class Graph {
 public:
  explicit Graph(std::size_t p);
  static Graph complete(std::size_t p);

  std::size_t nodes() const { return p_; }
  std::size_t max_edges() const { return p_ * (p_ - 1) / 2; }
  std::size_t edge_count() const { return n_edges_; }
  bool has_edge(std::size_t i, std::size_t j) const;
  void set_edge(std::size_t i, std::size_t j, bool present);

  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<std::pair<std::size_t, std::size_t>> non_edges() const;
  std::vector<std::size_t> neighbors(std::size_t i) const;

  std::string serialize() const;
  bool operator==(const Graph& other) const { return p_ == other.p_ && bits_ == other.bits_; }

 private:
  std::size_t index(std::size_t i, std::size_t j) const;

  std::size_t p_;
  std::size_t n_edges_ = 0;
  std::vector<bool> bits_;  // upper triangle, row-major
};

// Size-based prior: uniform over graphs given the edge count, with a
// truncated-geometric law on the count at odds p/(p+1).
double size_prior_log_ratio(const Graph& g, const Graph& g_tilde);
Graph sample_size_prior(std::size_t p, RngStream& rng);

struct GraphProposal {
  Graph graph;
  std::size_t i = 0;
  std::size_t j = 0;
  double log_q_ratio = 0.0;  // log q(G | G~) - log q(G~ | G)
};

// Single-edge reversal chosen so additions and removals are equally
// likely away from the boundary; empty and complete graphs force the only
// available direction.
GraphProposal propose_graph(const Graph& g, RngStream& rng);

}  // namespace cpmcmc
