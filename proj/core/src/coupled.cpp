#include "cpmcmc/coupled.hpp"

#include <cmath>
#include <cstring>

#include "cpmcmc/errors.hpp"
#include "cpmcmc/resampling.hpp"

namespace cpmcmc {

bool pimh_accept(double log_z_current, double log_z_proposal, double u) {
  if (!(u > 0.0 && u < 1.0)) throw config_error("pimh_accept: u outside (0, 1)");
  return std::log(u) < log_z_proposal - log_z_current;
}

ChainState smc_proposal(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                        double resample_frac, RngStream rng) {
  const ParticleSystem sys = run_smc(model, schedule, n, resample_frac, rng.derive(0));
  const std::size_t idx = select_terminal_particle(sys, rng.derive(1).uniform());
  return trace_ancestor_path(sys, idx);
}

void pimh_step_single(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                      double resample_frac, ChainState& state, RngStream rng) {
  ChainState proposal = smc_proposal(model, schedule, n, resample_frac, rng.derive(0));
  const double u = rng.derive(1).uniform();
  if (pimh_accept(state.log_z, proposal.log_z, u)) state = std::move(proposal);
}

void coupled_pimh_step(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                       double resample_frac, ChainState& chain, ChainState& chain_bar,
                       RngStream rng) {
  const ChainState proposal = smc_proposal(model, schedule, n, resample_frac, rng.derive(0));
  const double u = rng.derive(1).uniform();
  const bool acc = pimh_accept(chain.log_z, proposal.log_z, u);
  const bool acc_bar = pimh_accept(chain_bar.log_z, proposal.log_z, u);
  if (acc) chain = proposal;
  if (acc_bar) chain_bar = proposal;
}

void csmc_step_single(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                      double resample_frac, ChainState& state, RngStream rng) {
  const ParticleSystem sys =
      run_csmc_pinned(model, schedule, n, resample_frac, state.path, rng.derive(0));
  const std::size_t idx = select_terminal_particle(sys, rng.derive(1).uniform());
  state = trace_ancestor_path(sys, idx);
}

void coupled_csmc_step(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                       double resample_frac, ChainState& chain, ChainState& chain_bar,
                       RngStream rng) {
  const auto [sys, sys_bar] = run_csmc_coupled(model, schedule, n, resample_frac, chain.path,
                                               chain_bar.path, rng.derive(0));
  const auto [idx, idx_bar] =
      maximal_coupling_indices(ProbabilityVector::from_normalized(sys.final_weights),
                               ProbabilityVector::from_normalized(sys_bar.final_weights),
                               rng.derive(1));
  chain = trace_ancestor_path(sys, idx);
  chain_bar = trace_ancestor_path(sys_bar, idx_bar);
}

bool states_met(const Model& model, const ChainState& a, const ChainState& b,
                bool require_z_equality) {
  if (require_z_equality &&
      std::memcmp(&a.log_z, &b.log_z, sizeof(double)) != 0)
    return false;
  return paths_equal(model, a.path, b.path);
}

}  // namespace cpmcmc
