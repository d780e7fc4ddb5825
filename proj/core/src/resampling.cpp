#include "cpmcmc/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cpmcmc/errors.hpp"

namespace cpmcmc {

namespace {

void check_entries(const std::vector<double>& v, const char* who) {
  if (v.empty()) throw config_error(std::string(who) + ": empty vector");
  for (double x : v) {
    if (!std::isfinite(x)) throw numerical_error(std::string(who) + ": non-finite entry");
    if (x < 0.0) throw config_error(std::string(who) + ": negative entry");
  }
}

}  // namespace

ProbabilityVector ProbabilityVector::from_normalized(std::vector<double> p) {
  check_entries(p, "ProbabilityVector::from_normalized");
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-6)
    throw config_error("ProbabilityVector::from_normalized: sum deviates from 1 by more than 1e-6");
  for (double& x : p) x /= sum;
  return ProbabilityVector(std::move(p));
}

ProbabilityVector ProbabilityVector::from_weights(std::vector<double> w) {
  check_entries(w, "ProbabilityVector::from_weights");
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(sum > 0.0)) throw numerical_error("ProbabilityVector::from_weights: weights sum to zero");
  for (double& x : w) x /= sum;
  return ProbabilityVector(std::move(w));
}

ProbabilityVector ProbabilityVector::from_log_weights(const std::vector<double>& logw) {
  if (logw.empty()) throw config_error("ProbabilityVector::from_log_weights: empty vector");
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : logw) {
    if (std::isnan(x)) throw numerical_error("ProbabilityVector::from_log_weights: NaN entry");
    mx = std::max(mx, x);
  }
  if (!std::isfinite(mx))
    throw numerical_error("ProbabilityVector::from_log_weights: all log weights are -inf");
  std::vector<double> w(logw.size());
  for (std::size_t i = 0; i < logw.size(); ++i) w[i] = std::exp(logw[i] - mx);
  return from_weights(std::move(w));
}

double ess(const std::vector<double>& weights) {
  check_entries(weights, "ess");
  double s = 0.0;
  double s2 = 0.0;
  for (double w : weights) {
    s += w;
    s2 += w * w;
  }
  if (!(s > 0.0)) throw numerical_error("ess: weights sum to zero");
  return s * s / s2;
}

double ess_log(const std::vector<double>& log_weights) {
  if (log_weights.empty()) throw config_error("ess_log: empty vector");
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : log_weights) {
    if (std::isnan(x)) throw numerical_error("ess_log: NaN entry");
    mx = std::max(mx, x);
  }
  if (!std::isfinite(mx)) throw numerical_error("ess_log: all log weights are -inf");
  std::vector<double> w(log_weights.size());
  for (std::size_t i = 0; i < log_weights.size(); ++i) w[i] = std::exp(log_weights[i] - mx);
  return ess(w);
}

std::size_t categorical_draw(const ProbabilityVector& p, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw config_error("categorical_draw: u outside [0, 1)");
  double cum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    cum += p[j];
    if (u < cum) return j;
  }
  return p.size() - 1;
}

std::vector<std::size_t> multinomial_resample(const ProbabilityVector& p, std::size_t n,
                                              RngStream rng) {
  std::vector<double> cum(p.size());
  std::partial_sum(p.values().begin(), p.values().end(), cum.begin());
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform() * cum.back();
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    out[i] = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cum.begin(),
                                                               static_cast<std::ptrdiff_t>(p.size()) - 1));
  }
  return out;
}

std::vector<std::size_t> systematic_resample(const ProbabilityVector& p, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw config_error("systematic_resample: u outside [0, 1)");
  const std::size_t n = p.size();
  std::vector<std::size_t> out(n);
  const double dn = static_cast<double>(n);
  std::size_t j = 0;
  double cum = p[0];
  double pos = u;
  for (std::size_t i = 0; i < n; ++i) {
    while (dn * cum < pos && j + 1 < n) {
      ++j;
      cum += p[j];
    }
    out[i] = j;
    pos += 1.0;
  }
  return out;
}

namespace {

// Shared-uniform core of the conditional sampler. V picks the band of the
// offset mixture, W the position within the band; the band tilted toward
// one extra copy of index 0 has probability r(k + 1)/(n p0).
double conditional_offset(double p0, std::size_t n, double v, double w) {
  const double np = static_cast<double>(n) * p0;
  const double k = std::floor(np);
  const double r = np - k;
  // Integer copy count with at least one guaranteed copy; the rotation
  // choice erases the offset. k = 0 must fall through: there the tilted
  // band carries all the mass and keeps u below n p0 however small p0 is.
  if (r <= 1e-12 && k >= 1.0) return w;
  const double q = r * (k + 1.0) / np;
  double u = (v < q) ? r * w : r + (1.0 - r) * w;
  if (u >= 1.0) u = std::nextafter(1.0, 0.0);
  return u;
}

std::vector<std::size_t> zero_positions(const std::vector<std::size_t>& b) {
  std::vector<std::size_t> pos;
  for (std::size_t c = 0; c < b.size(); ++c)
    if (b[c] == 0) pos.push_back(c);
  return pos;
}

std::vector<std::size_t> rotate(const std::vector<std::size_t>& b, std::size_t c) {
  const std::size_t n = b.size();
  std::vector<std::size_t> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = b[(c + i) % n];
  return a;
}

}  // namespace

std::vector<std::size_t> conditional_systematic_resample(const ProbabilityVector& p,
                                                         RngStream rng) {
  if (!(p[0] > 0.0))
    throw config_error("conditional_systematic_resample: conditioned index has zero probability");
  const double v = rng.uniform();
  const double w = rng.uniform();
  const double u = conditional_offset(p[0], p.size(), v, w);
  const std::vector<std::size_t> b = systematic_resample(p, u);
  const std::vector<std::size_t> pos = zero_positions(b);
  if (pos.empty())
    throw numerical_error("conditional_systematic_resample: conditioned index received no copy");
  const std::size_t c = pos[rng.uniform_index(pos.size())];
  return rotate(b, c);
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> coupled_conditional_systematic(
    const ProbabilityVector& p, const ProbabilityVector& pbar, RngStream rng) {
  if (p.size() != pbar.size())
    throw config_error("coupled_conditional_systematic: size mismatch");
  if (!(p[0] > 0.0) || !(pbar[0] > 0.0))
    throw config_error("coupled_conditional_systematic: conditioned index has zero probability");
  const std::size_t n = p.size();
  const double v = rng.uniform();
  const double w = rng.uniform();
  const std::vector<std::size_t> b = systematic_resample(p, conditional_offset(p[0], n, v, w));
  const std::vector<std::size_t> bb =
      systematic_resample(pbar, conditional_offset(pbar[0], n, v, w));
  const std::vector<std::size_t> rots = zero_positions(b);
  const std::vector<std::size_t> rotsb = zero_positions(bb);
  if (rots.empty() || rotsb.empty())
    throw numerical_error("coupled_conditional_systematic: conditioned index received no copy");

  // Greedy transport over rotation pairs: repeatedly give the highest
  // overlap pair as much mass as its uniform marginals still allow, ties
  // to the lexicographically smallest offsets. Marginals stay exactly
  // uniform, so each side alone is the single-system sampler.
  const std::size_t na = rots.size();
  const std::size_t nb = rotsb.size();
  std::vector<double> row(na, 1.0 / static_cast<double>(na));
  std::vector<double> col(nb, 1.0 / static_cast<double>(nb));
  std::vector<std::vector<int>> overlap(na, std::vector<int>(nb, 0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      int o = 0;
      for (std::size_t t = 0; t < n; ++t)
        if (b[(rots[i] + t) % n] == bb[(rotsb[j] + t) % n]) ++o;
      overlap[i][j] = o;
    }

  struct Cell {
    std::size_t i, j;
    double mass;
  };
  std::vector<Cell> cells;
  double assigned = 0.0;
  while (assigned < 1.0 - 1e-12) {
    std::size_t bi = na;
    std::size_t bj = nb;
    int best = -1;
    for (std::size_t i = 0; i < na; ++i) {
      if (row[i] <= 1e-15) continue;
      for (std::size_t j = 0; j < nb; ++j) {
        if (col[j] <= 1e-15) continue;
        if (overlap[i][j] > best) {
          best = overlap[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    if (best < 0) break;  // marginals exhausted up to rounding
    const double m = std::min(row[bi], col[bj]);
    cells.push_back({bi, bj, m});
    row[bi] -= m;
    col[bj] -= m;
    assigned += m;
  }

  const double r = rng.uniform() * assigned;
  double cum = 0.0;
  std::size_t pick = cells.size() - 1;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cum += cells[c].mass;
    if (r < cum) {
      pick = c;
      break;
    }
  }
  return {rotate(b, rots[cells[pick].i]), rotate(bb, rotsb[cells[pick].j])};
}

std::pair<std::size_t, std::size_t> maximal_coupling_indices(const ProbabilityVector& p,
                                                             const ProbabilityVector& pbar,
                                                             RngStream rng) {
  if (p.size() != pbar.size()) throw config_error("maximal_coupling_indices: size mismatch");
  const std::size_t n = p.size();
  std::vector<double> pmin(n);
  double a = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pmin[i] = std::min(p[i], pbar[i]);
    a += pmin[i];
  }
  const double u = rng.uniform();
  if (u < a || a >= 1.0 - 1e-14) {
    const auto common = ProbabilityVector::from_weights(std::move(pmin));
    const std::size_t i = categorical_draw(common, rng.uniform());
    return {i, i};
  }
  std::vector<double> res(n);
  std::vector<double> resb(n);
  for (std::size_t i = 0; i < n; ++i) {
    res[i] = p[i] - pmin[i];
    resb[i] = pbar[i] - pmin[i];
  }
  const std::size_t i = categorical_draw(ProbabilityVector::from_weights(std::move(res)), rng.uniform());
  const std::size_t j =
      categorical_draw(ProbabilityVector::from_weights(std::move(resb)), rng.uniform());
  return {i, j};
}

}  // namespace cpmcmc
