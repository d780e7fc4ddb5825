#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cpmcmc/rng.hpp"

namespace cpmcmc {

// Normalized probability vector over particle indices. Construction
// validates and renormalizes; downstream samplers can then assume entries
// are nonnegative and sum to one up to rounding.
class ProbabilityVector {
 public:
  // Input that claims to be normalized already; a raw sum further than
  // 1e-6 from one is rejected as a likely caller bug.
  static ProbabilityVector from_normalized(std::vector<double> p);

  // Arbitrary nonnegative weights with a positive finite sum.
  static ProbabilityVector from_weights(std::vector<double> w);

  // Weights given on log scale; exponentiation is shifted by the max so
  // widely spread magnitudes stay representable.
  static ProbabilityVector from_log_weights(const std::vector<double>& logw);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const { return p_; }

 private:
  explicit ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

// Effective sample size (sum w)^2 / sum w^2 of nonnegative weights.
// Lies in [1, n] for any nonzero weight vector.
double ess(const std::vector<double>& weights);

// ESS computed from log weights, invariant to a common shift.
double ess_log(const std::vector<double>& log_weights);

// n independent categorical draws. Used inside schedule adaptation and as
// a plain-sampling oracle in tests.
std::vector<std::size_t> multinomial_resample(const ProbabilityVector& p, std::size_t n,
                                              RngStream rng);

// Systematic (stratified single-uniform) resampling with explicit uniform
// u in [0, 1). Returns n = p.size() parent indices, nondecreasing.
std::vector<std::size_t> systematic_resample(const ProbabilityVector& p, double u);

// Systematic resampling conditioned on the first output index being 0.
// The uniform is drawn from a two-part mixture that tilts toward offsets
// giving index 0 one extra copy, and the chosen rotation of the systematic
// output is uniform over those starting with 0. Requires p[0] > 0.
std::vector<std::size_t> conditional_systematic_resample(const ProbabilityVector& p,
                                                         RngStream rng);

// Pair of conditional systematic draws sharing their underlying uniforms,
// with the two rotation choices drawn from a greedy maximal-overlap joint
// law whose marginals are each the single-system rotation law. Equal
// inputs yield identical outputs.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> coupled_conditional_systematic(
    const ProbabilityVector& p, const ProbabilityVector& pbar, RngStream rng);

// Maximal coupling of two categorical distributions: the pair (i, ibar)
// has the prescribed marginals and P(i == ibar) equals one minus the total
// variation distance between them.
std::pair<std::size_t, std::size_t> maximal_coupling_indices(const ProbabilityVector& p,
                                                             const ProbabilityVector& pbar,
                                                             RngStream rng);

// Single categorical draw by inversion; the one-output specialization of
// systematic resampling.
std::size_t categorical_draw(const ProbabilityVector& p, double u);

}  // namespace cpmcmc
