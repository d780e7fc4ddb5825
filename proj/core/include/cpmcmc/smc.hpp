#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cpmcmc/adaptation.hpp"
#include "cpmcmc/model.hpp"
#include "cpmcmc/rng.hpp"

namespace cpmcmc {

// Terminal weighted particle approximation retained alongside a selected
// path so statistics can be read out as weighted averages instead of
// single-particle evaluations.
struct WeightedCloud {
  std::vector<Point> points;
  std::vector<double> weights;  // normalized
};

// State carried by the outer chains: a full path over tempering stages,
// the normalizing-constant estimate of the run that produced it, and that
// run's terminal cloud.
struct ChainState {
  std::vector<Point> path;  // one entry per stage, 0..S
  double log_z = 0.0;
  WeightedCloud cloud;
};

// One reweighting event of a sampler run.
struct StageTrace {
  std::size_t stage = 0;  // 1..S for intermediate stages, S+1 for the final reweight
  double alpha = 0.0;
  double ess = 0.0;
  bool resampled = false;
  double log_z_so_far = 0.0;
};

// Full record of a sampler sweep across the tempering ladder.
struct ParticleSystem {
  std::vector<std::vector<Point>> stage_particles;   // per stage 0..S
  std::vector<std::vector<std::size_t>> ancestry;    // stage s entry maps slot at s to parent at s-1
  std::vector<double> final_weights;                 // normalized terminal weights
  double log_z = 0.0;
  std::vector<StageTrace> trace;

  std::size_t n_particles() const { return stage_particles.front().size(); }
  std::size_t n_stages() const { return stage_particles.size() - 1; }
  const std::vector<Point>& terminal() const { return stage_particles.back(); }
};

// Tempered sampler with systematic resampling triggered when the ESS of
// the carried weights drops below resample_frac * n. The normalizing
// constant accrues at every reweighting event whether or not a resample
// follows.
ParticleSystem run_smc(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                       double resample_frac, RngStream rng);

// Same sweep with slot 0 pinned to the given reference path; resampling
// uses the conditional systematic sampler and the pinned slot is never
// mutated.
ParticleSystem run_csmc_pinned(const Model& model, const TemperingSchedule& schedule,
                               std::size_t n, double resample_frac,
                               const std::vector<Point>& reference, RngStream rng);

// Two pinned sweeps evolved under shared randomness: identical fresh
// initial slots, jointly coupled conditional resampling, and
// common-random-number inner kernels pairwise by slot.
std::pair<ParticleSystem, ParticleSystem> run_csmc_coupled(const Model& model,
                                                           const TemperingSchedule& schedule,
                                                           std::size_t n, double resample_frac,
                                                           const std::vector<Point>& reference,
                                                           const std::vector<Point>& reference_bar,
                                                           RngStream rng);

// Draws a terminal slot index from the final weights by inversion.
std::size_t select_terminal_particle(const ParticleSystem& system, double u);

// Reconstructs the ancestral path of a terminal slot and packages it as a
// chain state carrying this run's log_z and terminal cloud.
ChainState trace_ancestor_path(const ParticleSystem& system, std::size_t terminal_index);

// Canonical-serialization equality of two paths.
bool paths_equal(const Model& model, const std::vector<Point>& a, const std::vector<Point>& b);

}  // namespace cpmcmc
