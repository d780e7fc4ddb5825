#include "cpmcmc/ggm/gwishart.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "cpmcmc/errors.hpp"

namespace cpmcmc {

Eigen::MatrixXd wishart_sample(double df, const Eigen::MatrixXd& scale, RngStream& rng) {
  const Eigen::Index p = scale.rows();
  if (scale.cols() != p) throw config_error("wishart: scale not square");
  if (!(df > static_cast<double>(p) - 1.0)) throw config_error("wishart: df too small");
  Eigen::LLT<Eigen::MatrixXd> llt(scale);
  if (llt.info() != Eigen::Success) throw numerical_error("wishart: scale not positive definite");
  // Bartlett: K = L A A^T L^T with chi-square diagonal and standard
  // normal subdiagonal.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    a(i, i) = std::sqrt(rng.chi_square(df - static_cast<double>(i)));
    for (Eigen::Index j = 0; j < i; ++j) a(i, j) = rng.normal();
  }
  const Eigen::MatrixXd la = llt.matrixL() * a;
  return la * la.transpose();
}

Eigen::MatrixXd gwishart_sample(const Graph& g, double delta, const Eigen::MatrixXd& D,
                                RngStream& rng) {
  const Eigen::Index p = static_cast<Eigen::Index>(g.nodes());
  if (D.rows() != p || D.cols() != p) throw config_error("gwishart: rate matrix size mismatch");
  if (!(delta > 2.0)) throw config_error("gwishart: delta must exceed 2");

  Eigen::LLT<Eigen::MatrixXd> d_llt(D);
  if (d_llt.info() != Eigen::Success)
    throw numerical_error("gwishart: rate matrix not positive definite");
  const Eigen::MatrixXd d_inv = d_llt.solve(Eigen::MatrixXd::Identity(p, p));

  const Eigen::MatrixXd k0 = wishart_sample(delta + static_cast<double>(p) - 1.0, d_inv, rng);
  Eigen::MatrixXd sigma = k0.llt().solve(Eigen::MatrixXd::Identity(p, p));
  sigma = 0.5 * (sigma + sigma.transpose()).eval();

  // Node-wise completion: repeatedly overwrite each column's off-diagonal
  // block with the regression through the node's neighbors until the
  // matrix stops moving.
  // Block coordinate sweeps converge linearly with a rate driven by the
  // correlation structure; concentrated posterior rates can need several
  // thousand sweeps, so the cap is generous and the failure is reserved
  // for genuine stalls.
  constexpr double kTol = 1e-8;
  constexpr int kMaxSweeps = 50000;
  Eigen::MatrixXd w = sigma;
  double delta_abs = 0.0;
  double delta_min = std::numeric_limits<double>::infinity();
  std::string traj;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    const Eigen::MatrixXd before = w;
    for (Eigen::Index j = 0; j < p; ++j) {
      const std::vector<std::size_t> nb = g.neighbors(static_cast<std::size_t>(j));
      Eigen::VectorXd full = Eigen::VectorXd::Zero(p);
      if (!nb.empty()) {
        const Eigen::Index q = static_cast<Eigen::Index>(nb.size());
        Eigen::MatrixXd w_nn(q, q);
        Eigen::VectorXd s_nj(q);
        for (Eigen::Index a = 0; a < q; ++a) {
          s_nj[a] = sigma(static_cast<Eigen::Index>(nb[a]), j);
          for (Eigen::Index b = 0; b < q; ++b)
            w_nn(a, b) = w(static_cast<Eigen::Index>(nb[a]), static_cast<Eigen::Index>(nb[b]));
        }
        const Eigen::VectorXd beta = w_nn.ldlt().solve(s_nj);
        for (Eigen::Index a = 0; a < q; ++a) full[static_cast<Eigen::Index>(nb[a])] = beta[a];
        full = w * full;
      }
      for (Eigen::Index i = 0; i < p; ++i) {
        if (i == j) continue;
        w(i, j) = full[i];
        w(j, i) = full[i];
      }
    }
    delta_abs = (w - before).cwiseAbs().maxCoeff();
    delta_min = std::min(delta_min, delta_abs);
    if (sweep == 999 || sweep == 9999 || sweep == 24999 || sweep == 49999) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " d%d=%.3e", sweep + 1, delta_abs);
      traj += buf;
    }
    converged = delta_abs < kTol;
  }
  if (!converged) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "gwishart: completion did not converge (scale %.3e, min change %.3e,%s)",
                  sigma.cwiseAbs().maxCoeff(), delta_min, traj.c_str());
    throw numerical_error(buf);
  }

  Eigen::LLT<Eigen::MatrixXd> w_llt(w);
  if (w_llt.info() != Eigen::Success)
    throw numerical_error("gwishart: completed covariance not positive definite");
  Eigen::MatrixXd k = w_llt.solve(Eigen::MatrixXd::Identity(p, p));
  k = 0.5 * (k + k.transpose()).eval();
  // The limit matrix has exact zeros off the graph; enforce them so the
  // structural constraint holds bitwise.
  for (Eigen::Index i = 0; i + 1 < p; ++i)
    for (Eigen::Index j = i + 1; j < p; ++j)
      if (!g.has_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        k(i, j) = 0.0;
        k(j, i) = 0.0;
      }
  return k;
}

}  // namespace cpmcmc
