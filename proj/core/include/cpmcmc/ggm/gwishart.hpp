#pragma once

#include <Eigen/Dense>

#include "cpmcmc/ggm/graph.hpp"
#include "cpmcmc/rng.hpp"

namespace cpmcmc {

// Standard Wishart draw with the density proportional to
// |K|^{(df-p-1)/2} exp(-tr(K V^{-1})/2), mean df * V, by the Bartlett
// factorization. Requires df > p - 1.
Eigen::MatrixXd wishart_sample(double df, const Eigen::MatrixXd& scale, RngStream& rng);

// Draw from the G-Wishart law with density proportional to
// |K|^{(delta-2)/2} exp(-<K, D>/2) restricted to matrices whose off-graph
// entries vanish. Direct sampler: an unconstrained draw at matched
// moments followed by iterated node-wise covariance completion, then
// inversion. On the complete graph this is exactly the Wishart with
// df = delta + p - 1 and scale D^{-1}.
Eigen::MatrixXd gwishart_sample(const Graph& g, double delta, const Eigen::MatrixXd& D,
                                RngStream& rng);

}  // namespace cpmcmc
