#include "cpmcmc/smc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpmcmc/errors.hpp"
#include "cpmcmc/resampling.hpp"

namespace cpmcmc {

namespace {

constexpr std::size_t kMaxRejectionAttempts = 1000000;

double log_sum_exp(const std::vector<double>& v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

// Exact draw from the prior tempered to exponent alpha0 by rejection
// against the likelihood supremum.
Point sample_tempered_init(const Model& model, double alpha0, RngStream rng) {
  if (alpha0 <= 0.0) return model.sample_prior(rng.derive(0, 0));
  const auto sup = model.log_likelihood_sup();
  if (!sup)
    throw config_error("run: schedule starts above exponent 0 but the model has no "
                       "likelihood supremum for rejection initialization");
  for (std::size_t attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
    Point x = model.sample_prior(rng.derive(attempt, 0));
    const double b = std::min(model.log_likelihood(x) - *sup, 0.0);
    if (std::log(rng.derive(attempt, 1).uniform()) < alpha0 * b) return x;
  }
  throw numerical_error("run: rejection initialization exhausted its attempt budget");
}

// Carried normalized log weights plus the running evidence estimate.
struct WeightLedger {
  std::vector<double> lw;
  double log_z = 0.0;

  explicit WeightLedger(std::size_t n)
      : lw(n, -std::log(static_cast<double>(n))) {}

  // Folds one reweighting event in and returns the ESS of the updated
  // carried weights.
  double reweight(const std::vector<double>& log_incr, std::size_t stage) {
    for (std::size_t i = 0; i < lw.size(); ++i) lw[i] += log_incr[i];
    const double lse = log_sum_exp(lw);
    if (!std::isfinite(lse))
      throw numerical_error("run: all particle weights vanished at stage " +
                            std::to_string(stage));
    log_z += lse;
    for (double& x : lw) x -= lse;
    return ess_log(lw);
  }

  void reset_uniform() {
    std::fill(lw.begin(), lw.end(), -std::log(static_cast<double>(lw.size())));
  }

  ProbabilityVector probabilities() const { return ProbabilityVector::from_log_weights(lw); }

  std::vector<double> linear() const {
    std::vector<double> w(lw.size());
    for (std::size_t i = 0; i < lw.size(); ++i) w[i] = std::exp(lw[i]);
    return w;
  }
};

std::vector<double> log_increments(const Model& model, const std::vector<Point>& particles,
                                   double delta) {
  std::vector<double> v(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i)
    v[i] = delta * model.log_likelihood(particles[i]);
  return v;
}

std::vector<std::size_t> identity_ancestry(std::size_t n) {
  std::vector<std::size_t> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = i;
  return a;
}

void check_run_args(const TemperingSchedule& schedule, std::size_t n, double resample_frac,
                    std::size_t min_particles) {
  schedule.validate();
  if (n < min_particles) throw config_error("run: too few particles");
  if (!(resample_frac >= 0.0 && resample_frac <= 1.0))
    throw config_error("run: resample fraction outside [0, 1]");
}

}  // namespace

ParticleSystem run_smc(const Model& model, const TemperingSchedule& schedule, std::size_t n,
                       double resample_frac, RngStream rng) {
  check_run_args(schedule, n, resample_frac, 1);
  const std::size_t stages = schedule.stages();

  ParticleSystem sys;
  std::vector<Point> particles(n);
  for (std::size_t i = 0; i < n; ++i)
    particles[i] = sample_tempered_init(model, schedule.alpha0, rng.derive(0, i));
  sys.stage_particles.push_back(particles);

  WeightLedger ledger(n);
  double alpha_prev = schedule.alpha0;
  for (std::size_t s = 1; s <= stages + 1; ++s) {
    const bool final_stage = s == stages + 1;
    const double alpha = final_stage ? 1.0 : schedule.alphas[s - 1];
    const double e = ledger.reweight(log_increments(model, particles, alpha - alpha_prev), s);

    bool resampled = false;
    if (!final_stage) {
      if (e < resample_frac * static_cast<double>(n)) {
        resampled = true;
        const double u = rng.derive(1, s, 0).uniform();
        const std::vector<std::size_t> parents = systematic_resample(ledger.probabilities(), u);
        std::vector<Point> next(n);
        for (std::size_t i = 0; i < n; ++i) next[i] = particles[parents[i]];
        particles = std::move(next);
        ledger.reset_uniform();
        sys.ancestry.push_back(parents);
      } else {
        sys.ancestry.push_back(identity_ancestry(n));
      }
      const RngStream mut = rng.derive(1, s, 1);
      for (std::size_t k = 1; k <= schedule.mcmc_counts[s - 1]; ++k)
        for (std::size_t i = 0; i < n; ++i)
          particles[i] = model.inner_step(particles[i], alpha, mut.derive(k, i));
      sys.stage_particles.push_back(particles);
    } else {
      sys.final_weights = ledger.linear();
    }
    sys.trace.push_back({s, alpha, e, resampled, ledger.log_z});
    alpha_prev = alpha;
  }
  sys.log_z = ledger.log_z;
  return sys;
}

ParticleSystem run_csmc_pinned(const Model& model, const TemperingSchedule& schedule,
                               std::size_t n, double resample_frac,
                               const std::vector<Point>& reference, RngStream rng) {
  check_run_args(schedule, n, resample_frac, 2);
  const std::size_t stages = schedule.stages();
  if (reference.size() != stages + 1)
    throw config_error("run_csmc_pinned: reference path length does not match the schedule");

  ParticleSystem sys;
  std::vector<Point> particles(n);
  particles[0] = reference[0];
  for (std::size_t i = 1; i < n; ++i)
    particles[i] = sample_tempered_init(model, schedule.alpha0, rng.derive(0, i));
  sys.stage_particles.push_back(particles);

  WeightLedger ledger(n);
  double alpha_prev = schedule.alpha0;
  for (std::size_t s = 1; s <= stages + 1; ++s) {
    const bool final_stage = s == stages + 1;
    const double alpha = final_stage ? 1.0 : schedule.alphas[s - 1];
    const double e = ledger.reweight(log_increments(model, particles, alpha - alpha_prev), s);

    bool resampled = false;
    if (!final_stage) {
      if (e < resample_frac * static_cast<double>(n)) {
        resampled = true;
        const std::vector<std::size_t> parents =
            conditional_systematic_resample(ledger.probabilities(), rng.derive(1, s, 0));
        std::vector<Point> next(n);
        for (std::size_t i = 0; i < n; ++i) next[i] = particles[parents[i]];
        particles = std::move(next);
        ledger.reset_uniform();
        sys.ancestry.push_back(parents);
      } else {
        sys.ancestry.push_back(identity_ancestry(n));
      }
      particles[0] = reference[s];
      const RngStream mut = rng.derive(1, s, 1);
      for (std::size_t k = 1; k <= schedule.mcmc_counts[s - 1]; ++k)
        for (std::size_t i = 1; i < n; ++i)
          particles[i] = model.inner_step(particles[i], alpha, mut.derive(k, i));
      sys.stage_particles.push_back(particles);
    } else {
      sys.final_weights = ledger.linear();
    }
    sys.trace.push_back({s, alpha, e, resampled, ledger.log_z});
    alpha_prev = alpha;
  }
  sys.log_z = ledger.log_z;
  return sys;
}

std::pair<ParticleSystem, ParticleSystem> run_csmc_coupled(const Model& model,
                                                           const TemperingSchedule& schedule,
                                                           std::size_t n, double resample_frac,
                                                           const std::vector<Point>& reference,
                                                           const std::vector<Point>& reference_bar,
                                                           RngStream rng) {
  check_run_args(schedule, n, resample_frac, 2);
  const std::size_t stages = schedule.stages();
  if (reference.size() != stages + 1 || reference_bar.size() != stages + 1)
    throw config_error("run_csmc_coupled: reference path length does not match the schedule");

  ParticleSystem sa;
  ParticleSystem sb;
  std::vector<Point> pa(n);
  std::vector<Point> pb(n);
  pa[0] = reference[0];
  pb[0] = reference_bar[0];
  for (std::size_t i = 1; i < n; ++i) {
    pa[i] = sample_tempered_init(model, schedule.alpha0, rng.derive(0, i));
    pb[i] = pa[i];  // fresh slots are shared between the two systems
  }
  sa.stage_particles.push_back(pa);
  sb.stage_particles.push_back(pb);

  WeightLedger la(n);
  WeightLedger lb(n);
  double alpha_prev = schedule.alpha0;
  for (std::size_t s = 1; s <= stages + 1; ++s) {
    const bool final_stage = s == stages + 1;
    const double alpha = final_stage ? 1.0 : schedule.alphas[s - 1];
    const double ea = la.reweight(log_increments(model, pa, alpha - alpha_prev), s);
    const double eb = lb.reweight(log_increments(model, pb, alpha - alpha_prev), s);

    bool resampled = false;
    if (!final_stage) {
      // A low ESS in either system triggers a joint resample of both so
      // the index coupling can keep the clouds aligned.
      const double cut = resample_frac * static_cast<double>(n);
      if (ea < cut || eb < cut) {
        resampled = true;
        const auto [parents_a, parents_b] = coupled_conditional_systematic(
            la.probabilities(), lb.probabilities(), rng.derive(1, s, 0));
        std::vector<Point> na(n);
        std::vector<Point> nb(n);
        for (std::size_t i = 0; i < n; ++i) {
          na[i] = pa[parents_a[i]];
          nb[i] = pb[parents_b[i]];
        }
        pa = std::move(na);
        pb = std::move(nb);
        la.reset_uniform();
        lb.reset_uniform();
        sa.ancestry.push_back(parents_a);
        sb.ancestry.push_back(parents_b);
      } else {
        sa.ancestry.push_back(identity_ancestry(n));
        sb.ancestry.push_back(identity_ancestry(n));
      }
      pa[0] = reference[s];
      pb[0] = reference_bar[s];
      const RngStream mut = rng.derive(1, s, 1);
      for (std::size_t k = 1; k <= schedule.mcmc_counts[s - 1]; ++k)
        for (std::size_t i = 1; i < n; ++i) {
          auto [xa, xb] = model.coupled_inner_step(pa[i], pb[i], alpha, mut.derive(k, i));
          pa[i] = std::move(xa);
          pb[i] = std::move(xb);
        }
      sa.stage_particles.push_back(pa);
      sb.stage_particles.push_back(pb);
    } else {
      sa.final_weights = la.linear();
      sb.final_weights = lb.linear();
    }
    sa.trace.push_back({s, alpha, ea, resampled, la.log_z});
    sb.trace.push_back({s, alpha, eb, resampled, lb.log_z});
    alpha_prev = alpha;
  }
  sa.log_z = la.log_z;
  sb.log_z = lb.log_z;
  return {std::move(sa), std::move(sb)};
}

std::size_t select_terminal_particle(const ParticleSystem& system, double u) {
  return categorical_draw(ProbabilityVector::from_normalized(system.final_weights), u);
}

ChainState trace_ancestor_path(const ParticleSystem& system, std::size_t terminal_index) {
  const std::size_t stages = system.n_stages();
  if (terminal_index >= system.n_particles())
    throw config_error("trace_ancestor_path: terminal index out of range");
  ChainState state;
  state.path.resize(stages + 1);
  std::size_t idx = terminal_index;
  for (std::size_t s = stages; s > 0; --s) {
    state.path[s] = system.stage_particles[s][idx];
    idx = system.ancestry[s - 1][idx];
  }
  state.path[0] = system.stage_particles[0][idx];
  state.log_z = system.log_z;
  state.cloud.points = system.terminal();
  state.cloud.weights = system.final_weights;
  return state;
}

bool paths_equal(const Model& model, const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (model.serialize(a[i]) != model.serialize(b[i])) return false;
  return true;
}

}  // namespace cpmcmc
