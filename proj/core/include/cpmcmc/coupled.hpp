#pragma once

#include <cstddef>

#include "cpmcmc/smc.hpp"

namespace cpmcmc {

// Pair of chains advanced under shared randomness. chain_bar lags chain by
// one step in distribution; met flips once the pair has coalesced and the
// two states are thereafter advanced as one.
struct CoupledState {
  ChainState chain;
  ChainState chain_bar;
  bool met = false;
};

// Independence acceptance rule on evidence estimates: accept iff
// log(u) < log_z_proposal - log_z_current.
bool pimh_accept(double log_z_current, double log_z_proposal, double u);

// One fresh sampler sweep plus terminal selection, packaged as a state.
ChainState smc_proposal(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                        double resample_frac, RngStream rng);

// Independence update of a single chain: one shared proposal, accepted
// against the chain's own evidence estimate.
void pimh_step_single(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                      double resample_frac, ChainState& state, RngStream rng);

// Joint independence update: both chains see the same proposal and the
// same acceptance uniform, each deciding with its own evidence estimate.
// Both accepting coalesces the pair.
void coupled_pimh_step(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                       double resample_frac, ChainState& chain, ChainState& chain_bar,
                       RngStream rng);

// Path refresh of a single chain through a pinned sweep; the state's
// evidence estimate and cloud are replaced by the new system's.
void csmc_step_single(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                      double resample_frac, ChainState& state, RngStream rng);

// Joint path refresh through two pinned sweeps under shared randomness,
// with the terminal selections maximally coupled.
void coupled_csmc_step(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                       double resample_frac, ChainState& chain, ChainState& chain_bar,
                       RngStream rng);

// Coalescence test. Paths must match bitwise in canonical form; the
// evidence estimates must additionally match when the kernel mixture can
// read them (any positive independence-step probability).
bool states_met(const Model& model, const ChainState& a, const ChainState& b,
                bool require_z_equality);

}  // namespace cpmcmc
