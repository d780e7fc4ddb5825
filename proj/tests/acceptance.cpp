// Acceptance gate. Each criterion is a self-contained experiment with its
// parameters and tolerances pinned in code; the binary runs exactly one
// criterion per invocation (--criterion N) and prints a single PASS or
// FAIL line carrying the measured values. Exit status mirrors the verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cpmcmc/adaptation.hpp"
#include "cpmcmc/estimator.hpp"
#include "cpmcmc/ggm/ggm.hpp"
#include "cpmcmc/ggm/graph.hpp"
#include "cpmcmc/ggm/gwishart.hpp"
#include "cpmcmc/models/mixture.hpp"
#include "cpmcmc/resampling.hpp"
#include "cpmcmc/rng.hpp"
#include "cpmcmc/store.hpp"
#include "support/resampling_laws.hpp"
#include "support/test_models.hpp"

namespace {

using namespace cpmcmc;
using cpmcmc::testing::chi2_crit_99;
using cpmcmc::testing::compute_law_chi2;
using cpmcmc::testing::ConjugateGaussianConfig;
using cpmcmc::testing::ConjugateGaussianModel;
using cpmcmc::testing::exact_conditional_law;
using cpmcmc::testing::exact_coupled_laws;
using cpmcmc::testing::exact_systematic_law;
using cpmcmc::testing::Indices;
using cpmcmc::testing::Law;
using cpmcmc::testing::total_variation;

// Single worker: the gate is budgeted for a one-core machine and the
// replicate streams make the results worker-count invariant anyway.
constexpr std::size_t kWorkers = 1;

std::string fmt(const char* f, ...) {
  va_list args;
  va_start(args, f);
  char buf[1024];
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return std::string(buf);
}

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
  return 0.5 * (v[mid - 1] + hi);
}

// Bimodal location toy shared by criteria 2, 3, 4, and 8: two latent
// coordinates at (-3, 0), one hundred observations, the sum-plus-squares
// estimand read through the adaptively tempered ladder.
MixtureModel make_toy_model() {
  MixtureConfig mc;
  mc.d_x = 2;
  mc.y = simulate_mixture_data({-3.0, 0.0}, 100, RngStream(201));
  return MixtureModel(std::move(mc));
}

TemperingSchedule make_toy_schedule(const MixtureModel& model) {
  AdaptationConfig ac;
  ac.n_pilot = 2000;
  return adapt(model, ac, 202);
}

// Criterion 1: the k-step unbiased estimator averaged over replicates
// matches the analytic posterior mean of a conjugate Gaussian-mean model,
// for every kernel mixture weight.
bool criterion_1(std::string& detail) {
  ConjugateGaussianConfig cc;
  cc.m0 = 0.0;
  cc.v0 = 4.0;
  cc.s2 = 1.0;
  cc.rw_scale = 0.8;
  RngStream data(101);
  for (int i = 0; i < 20; ++i) cc.y.push_back(1.0 + data.normal());
  const ConjugateGaussianModel model(cc);
  const double truth = model.posterior_mean(1.0);

  AdaptationConfig ac;
  ac.n_pilot = 2000;
  const TemperingSchedule schedule = adapt(model, ac, 102);

  const double rhos[] = {0.0, 0.5, 1.0};
  double max_z = 0.0;
  for (int i = 0; i < 3; ++i) {
    CoupledRunConfig rc;
    rc.n_particles = 16;
    rc.rho = rhos[i];
    rc.min_steps = 5;
    rc.max_steps = 20000;
    const auto runs = run_replicates(model, schedule, rc, 103 + i, 500, kWorkers);
    std::vector<double> values;
    values.reserve(runs.size());
    for (const auto& run : runs) {
      if (!(run.met && run.completed)) {
        detail = fmt("run %zu at rho = %.1f never met", run.replicate, rhos[i]);
        return false;
      }
      values.push_back(h_hat_k(run, 0, 5));
    }
    const Aggregate agg = aggregate(values, 0.95);
    max_z = std::max(max_z, std::abs(agg.mean - truth) / agg.std_error);
  }
  detail = fmt(
      "grand mean of the k = 5 estimator vs analytic posterior mean: "
      "max |z| = %.2f over rho in {0, 0.5, 1} (pinned: <= 4 SE; R = 500 per rho, N = 16)",
      max_z);
  return max_z <= 4.0;
}

// Criterion 2: on the mixture toy under the pure independence kernel the
// chains meet at the first step at least 45% of the time.
bool criterion_2(std::string& detail) {
  const MixtureModel model = make_toy_model();
  const TemperingSchedule schedule = make_toy_schedule(model);
  CoupledRunConfig rc;
  rc.n_particles = 25;
  rc.rho = 1.0;
  rc.min_steps = 1;
  rc.max_steps = 5000;
  const std::size_t R = 448;
  const auto runs = run_replicates(model, schedule, rc, 203, R, kWorkers);
  std::size_t first_step = 0;
  for (const auto& run : runs)
    if (run.met && run.tau == 1) ++first_step;
  const double frac = static_cast<double>(first_step) / static_cast<double>(R);
  detail = fmt("Pr(tau = 1) = %.3f over %zu independence-kernel runs, N = 25 (pinned: >= 0.45)",
               frac, R);
  return frac >= 0.45;
}

// Criterion 3: under the pure refresh kernel the mean meeting time does
// not increase with the particle count.
bool criterion_3(std::string& detail) {
  const MixtureModel model = make_toy_model();
  const TemperingSchedule schedule = make_toy_schedule(model);
  const std::size_t ns[] = {8, 32, 128};
  Aggregate agg[3];
  for (int i = 0; i < 3; ++i) {
    CoupledRunConfig rc;
    rc.n_particles = ns[i];
    rc.rho = 0.0;
    rc.min_steps = 1;
    rc.max_steps = 5000;
    const auto runs = run_replicates(model, schedule, rc, 301 + i, 224, kWorkers);
    std::vector<double> taus;
    for (const auto& run : runs)
      if (run.met && run.completed) taus.push_back(static_cast<double>(run.tau));
    if (taus.size() < 200) {
      detail = fmt("only %zu met runs at N = %zu (need >= 200)", taus.size(), ns[i]);
      return false;
    }
    agg[i] = aggregate(taus, 0.95);
  }
  bool warned = false;
  for (int i = 0; i < 2; ++i) {
    if (agg[i + 1].mean <= agg[i].mean) continue;
    if (agg[i + 1].ci_lo <= agg[i].ci_hi) {
      warned = true;
      continue;
    }
    detail = fmt("mean tau rose from %.2f (N = %zu) to %.2f (N = %zu) with disjoint 95%% CIs",
                 agg[i].mean, ns[i], agg[i + 1].mean, ns[i + 1]);
    return false;
  }
  detail = fmt(
      "mean tau = %.2f / %.2f / %.2f at N = 8 / 32 / 128, >= 200 refresh-kernel runs each "
      "(pinned: non-increasing; adjacent increases tolerated when the 95%% CIs overlap)%s",
      agg[0].mean, agg[1].mean, agg[2].mean,
      warned ? " [warning: an adjacent increase had overlapping CIs]" : "");
  return true;
}

// Criterion 4: desk-scale efficiency orderings on the mixture toy at
// window length 1000: the independence kernel meets sooner, the refresh
// kernel autocorrelates less, and the refresh kernel wins on variance
// times cost.
bool criterion_4(std::string& detail) {
  const MixtureModel model = make_toy_model();
  const TemperingSchedule schedule = make_toy_schedule(model);
  const double rhos[] = {0.0, 0.5, 1.0};
  const std::size_t l = 1000;
  double med_tau[3];
  double mean_iact[3];
  double vt[3];
  for (int i = 0; i < 3; ++i) {
    CoupledRunConfig rc;
    rc.n_particles = 25;
    rc.rho = rhos[i];
    rc.min_steps = l;
    rc.max_steps = 5000;
    const auto runs = run_replicates(model, schedule, rc, 401 + i, 256, kWorkers);
    std::vector<double> taus;
    double iact_sum = 0.0;
    for (const auto& run : runs) {
      if (!(run.met && run.completed)) {
        detail = fmt("run %zu at rho = %.1f never met", run.replicate, rhos[i]);
        return false;
      }
      taus.push_back(static_cast<double>(run.tau));
      // Stationary-regime autocorrelation gauge: the weighted-cloud chain
      // over the back half of the window.
      std::vector<double> series(run.h[0].begin() + (l / 2 - 1), run.h[0].begin() + l);
      iact_sum += iact(series).value;
    }
    med_tau[i] = median(taus);
    mean_iact[i] = iact_sum / static_cast<double>(runs.size());
    const auto rows = variance_time_curve(runs, 0, {l});
    if (rows.front().flagged) {
      detail = fmt("variance-time row flagged at rho = %.1f", rhos[i]);
      return false;
    }
    vt[i] = rows.front().variance_times_time;
  }
  const bool ok_tau = med_tau[2] < med_tau[0];
  const bool ok_iact = mean_iact[0] < mean_iact[2];
  const bool ok_vt = vt[0] < vt[1] && vt[0] < vt[2];
  detail = fmt(
      "rho = 0 / 0.5 / 1: median tau %.1f / %.1f / %.1f, mean IACT %.2f / %.2f / %.2f, "
      "var x time %.3g / %.3g / %.3g at l = 1000, 256 runs each "
      "(pinned orderings: tau(1) < tau(0), IACT(0) < IACT(1), var x time lowest at rho = 0)",
      med_tau[0], med_tau[1], med_tau[2], mean_iact[0], mean_iact[1], mean_iact[2], vt[0], vt[1],
      vt[2]);
  return ok_tau && ok_iact && ok_vt;
}

// Criterion 5: coupled-run edge probabilities on a 5-node synthetic
// graphical model agree with a long single-edge-kernel reference chain.
bool criterion_5(std::string& detail) {
  const GgmSynthetic sim = ggm_synthetic(5, 50, 0.4, 501);
  GgmConfig gc;
  gc.U = scatter_matrix(sim.Y);
  gc.n = 50.0;
  const GgmModel model(gc);
  const std::size_t n_edges = model.estimand_names().size();

  RngStream chain_rng(503);
  Point x = model.sample_prior(chain_rng.derive(0));
  const std::size_t burn = 100000;
  const std::size_t keep = 10000000;
  std::vector<double> ref(n_edges, 0.0);
  for (std::size_t i = 0; i < burn + keep; ++i) {
    x = model.inner_step(x, 1.0, chain_rng.derive(i + 1));
    if (i >= burn) {
      const std::vector<double> e = model.estimands(x);
      for (std::size_t j = 0; j < n_edges; ++j) ref[j] += e[j];
    }
  }
  for (double& v : ref) v /= static_cast<double>(keep);

  AdaptationConfig ac;
  ac.n_pilot = 1000;
  const TemperingSchedule schedule = adapt(model, ac, 502);
  CoupledRunConfig rc;
  rc.n_particles = 128;
  rc.rho = 0.0;
  rc.min_steps = 40;
  rc.max_steps = 400;
  const std::size_t R = 64;
  const auto runs = run_replicates(model, schedule, rc, 504, R, kWorkers);
  std::vector<double> est(n_edges, 0.0);
  for (const auto& run : runs) {
    if (!(run.met && run.completed)) {
      detail = fmt("replicate %zu never met within %zu steps", run.replicate, rc.max_steps);
      return false;
    }
    for (std::size_t j = 0; j < n_edges; ++j) est[j] += h_bar_k_l(run, j, 7, 40);
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < n_edges; ++j)
    worst = std::max(worst, std::abs(est[j] / static_cast<double>(R) - ref[j]));
  detail = fmt(
      "max per-edge |Delta| = %.4f over %zu edges, %zu coupled replicates (N = 128, k = 7, "
      "l = 40) vs a 1e7-step reference chain (pinned: <= 0.05)",
      worst, n_edges, R);
  return worst <= 0.05;
}

// Criterion 6: on the complete graph the constrained-precision sampler is
// exactly Wishart, so its mean must match the analytic Wishart mean.
bool criterion_6(std::string& detail) {
  const std::size_t p = 4;
  const double delta = 3.5;
  Eigen::MatrixXd D(p, p);
  D << 2.0, 0.5, 0.0, 0.0,  //
      0.5, 1.5, 0.3, 0.0,   //
      0.0, 0.3, 1.8, 0.4,   //
      0.0, 0.0, 0.4, 1.2;
  const Graph g = Graph::complete(p);
  const double nu = delta + static_cast<double>(p) - 1.0;
  const Eigen::MatrixXd V = D.inverse();
  const std::size_t n_draws = 10000;
  RngStream rng(601);
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t i = 0; i < n_draws; ++i) mean += gwishart_sample(g, delta, D, rng);
  mean /= static_cast<double>(n_draws);
  double max_z = 0.0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      const double se =
          std::sqrt(nu * (V(i, j) * V(i, j) + V(i, i) * V(j, j)) / static_cast<double>(n_draws));
      max_z = std::max(max_z, std::abs(mean(i, j) - nu * V(i, j)) / se);
    }
  detail = fmt(
      "complete-graph sampler mean vs analytic Wishart mean: max entrywise |z| = %.2f over "
      "1e4 draws at p = 4 (pinned: <= 3 SE)",
      max_z);
  return max_z <= 3.0;
}

// Exact law of the maximal coupling of two categorical distributions:
// overlap mass on the diagonal, residuals paired independently.
Law maximal_pair_law(const ProbabilityVector& p, const ProbabilityVector& pbar) {
  Law law;
  double overlap = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) overlap += std::min(p[i], pbar[i]);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = std::min(p[i], pbar[i]);
    if (m > 0.0) law[Indices{i, i}] += m;
  }
  const double resid = 1.0 - overlap;
  if (resid > 1e-12) {
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < pbar.size(); ++j) {
        const double w =
            (p[i] - std::min(p[i], pbar[i])) * (pbar[j] - std::min(p[j], pbar[j])) / resid;
        if (w > 0.0) law[Indices{i, j}] += w;
      }
  }
  return law;
}

bool chi2_law_ok(const Law& law, const std::map<Indices, int>& counts, int n_draws,
                 const char* label, double& worst_ratio, std::string& why) {
  const auto r = compute_law_chi2(law, counts, n_draws);
  if (r.seen != n_draws) {
    why = fmt("%s: %d of %d draws fell outside the exact support", label, n_draws - r.seen,
              n_draws);
    return false;
  }
  if (r.dof < 2 || r.min_expected <= 5.0) {
    why = fmt("%s: degenerate chi-square design (dof %zu, min expected %.1f)", label, r.dof,
              r.min_expected);
    return false;
  }
  const double crit = chi2_crit_99(r.dof - 1);
  worst_ratio = std::max(worst_ratio, r.chi2 / crit);
  if (r.chi2 >= crit) {
    why = fmt("%s: chi2 = %.1f >= 1%% critical value %.1f (df %zu)", label, r.chi2, crit,
              r.dof - 1);
    return false;
  }
  return true;
}

// Criterion 7: distributional correctness of every resampling primitive
// against exhaustively enumerated exact laws.
bool criterion_7(std::string& detail) {
  const int n_draws = 100000;
  double worst_ratio = 0.0;
  double worst_tv = 0.0;
  std::string why;

  {
    const auto p = ProbabilityVector::from_normalized({0.15, 0.35, 0.30, 0.20});
    const Law law = exact_systematic_law(p);
    std::map<Indices, int> counts;
    RngStream rng(701);
    for (int i = 0; i < n_draws; ++i) ++counts[systematic_resample(p, rng.uniform())];
    if (!chi2_law_ok(law, counts, n_draws, "systematic N=4", worst_ratio, why)) {
      detail = why;
      return false;
    }
  }
  {
    const auto p = ProbabilityVector::from_normalized({0.75, 0.25});
    const Law law = exact_conditional_law(p);
    std::map<Indices, int> counts;
    RngStream rng(702);
    for (int i = 0; i < n_draws; ++i) ++counts[conditional_systematic_resample(p, rng.derive(i))];
    if (!chi2_law_ok(law, counts, n_draws, "conditional N=2", worst_ratio, why)) {
      detail = why;
      return false;
    }
  }
  {
    const auto p = ProbabilityVector::from_normalized({0.5, 0.2, 0.3});
    const Law law = exact_conditional_law(p);
    std::map<Indices, int> counts;
    RngStream rng(703);
    for (int i = 0; i < n_draws; ++i) ++counts[conditional_systematic_resample(p, rng.derive(i))];
    if (!chi2_law_ok(law, counts, n_draws, "conditional N=3", worst_ratio, why)) {
      detail = why;
      return false;
    }
  }
  {
    const auto p = ProbabilityVector::from_normalized({0.5, 0.2, 0.3});
    const auto pbar = ProbabilityVector::from_normalized({0.25, 0.45, 0.3});
    double marginal_err = 0.0;
    const auto [law_a, law_b] = exact_coupled_laws(p, pbar, &marginal_err);
    if (marginal_err > 1e-9) {
      detail = fmt("coupled transport cells leak marginal mass (defect %.1e)", marginal_err);
      return false;
    }
    std::map<Indices, int> counts_a;
    std::map<Indices, int> counts_b;
    RngStream rng(704);
    for (int i = 0; i < n_draws; ++i) {
      const auto [a, b] = coupled_conditional_systematic(p, pbar, rng.derive(i));
      ++counts_a[a];
      ++counts_b[b];
    }
    if (!chi2_law_ok(law_a, counts_a, n_draws, "coupled marginal A", worst_ratio, why) ||
        !chi2_law_ok(law_b, counts_b, n_draws, "coupled marginal B", worst_ratio, why)) {
      detail = why;
      return false;
    }
    // Exhaustive check that coupling does not perturb either marginal law,
    // and that equal inputs collapse to identical outputs.
    worst_tv = std::max(worst_tv, total_variation(law_a, exact_conditional_law(p)));
    worst_tv = std::max(worst_tv, total_variation(law_b, exact_conditional_law(pbar)));
    const auto [eq_a, eq_b] = exact_coupled_laws(p, p, nullptr);
    worst_tv = std::max(worst_tv, total_variation(eq_a, exact_conditional_law(p)));
    worst_tv = std::max(worst_tv, total_variation(eq_a, eq_b));
    RngStream eq_rng(705);
    for (int i = 0; i < 2000; ++i) {
      const auto [a, b] = coupled_conditional_systematic(p, p, eq_rng.derive(i));
      if (a != b) {
        detail = "equal-input coupled draw diverged";
        return false;
      }
    }
    if (worst_tv > 1e-10) {
      detail = fmt("coupled marginal law deviates from the conditional law (TV %.1e)", worst_tv);
      return false;
    }
  }
  {
    const auto p = ProbabilityVector::from_normalized({0.5, 0.3, 0.2});
    const auto pbar = ProbabilityVector::from_normalized({0.2, 0.3, 0.5});
    const Law law = maximal_pair_law(p, pbar);
    std::map<Indices, int> counts;
    RngStream rng(706);
    for (int i = 0; i < n_draws; ++i) {
      const auto [a, b] = maximal_coupling_indices(p, pbar, rng.derive(i));
      ++counts[Indices{a, b}];
    }
    if (!chi2_law_ok(law, counts, n_draws, "maximal coupling joint", worst_ratio, why)) {
      detail = why;
      return false;
    }
  }
  detail = fmt(
      "all resampling chi-squares below the 1%% critical value (worst chi2 / crit = %.2f) and "
      "exhaustive coupled-marginal TV <= %.1e (pinned: alpha = 0.01, 1e5 draws per law, "
      "TV < 1e-10)",
      worst_ratio, worst_tv);
  return true;
}

// Criterion 8: the weighted-cloud readout never loses more than 5% paired
// variance to the single-path readout on the mixture toy.
bool criterion_8(std::string& detail) {
  const MixtureModel model = make_toy_model();
  const TemperingSchedule schedule = make_toy_schedule(model);
  CoupledRunConfig rc;
  rc.n_particles = 25;
  rc.rho = 0.0;
  rc.min_steps = 12;
  rc.max_steps = 5000;
  const auto runs = run_replicates(model, schedule, rc, 801, 256, kWorkers);
  std::vector<double> rb;
  std::vector<double> sp;
  for (const auto& run : runs) {
    if (!(run.met && run.completed)) continue;
    rb.push_back(h_bar_k_l(run, 0, 3, 12, StatSource::rao_blackwell));
    sp.push_back(h_bar_k_l(run, 0, 3, 12, StatSource::single_path));
  }
  if (rb.size() < 200) {
    detail = fmt("only %zu met runs (need >= 200)", rb.size());
    return false;
  }
  const double var_rb = aggregate(rb, 0.95).variance;
  const double var_sp = aggregate(sp, 0.95).variance;
  detail = fmt(
      "weighted-cloud vs single-path estimator variance ratio = %.3f over %zu paired runs "
      "(k = 3, l = 12; pinned: <= 1.05)",
      var_rb / var_sp, rb.size());
  return var_rb <= 1.05 * var_sp;
}

// Criterion 9: the time-averaged estimator at l = k reduces bitwise to the
// single-start estimator, on a worked example and on every stored run of a
// store round trip.
bool criterion_9(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();

  CoupledRun worked;
  worked.met = true;
  worked.completed = true;
  worked.tau = 3;
  worked.steps = 3;
  worked.h = {{1.0, 3.0, 7.0}};
  worked.h_bar = {{0.0, 2.0, 7.0}};
  worked.h_path = worked.h;
  worked.h_path_bar = worked.h_bar;
  if (h_hat_k(worked, 0, 1) != 2.0 || h_hat_k(worked, 0, 2) != 3.0 ||
      h_hat_k(worked, 0, 3) != 7.0 || h_bar_k_l(worked, 0, 1, 2) != 2.5 ||
      std::abs(h_bar_k_l(worked, 0, 1, 3) - 4.0) > 1e-12) {
    detail = "worked three-step example off its hand-computed values";
    return false;
  }

  ConjugateGaussianConfig cc;
  cc.v0 = 4.0;
  cc.rw_scale = 0.8;
  RngStream data(901);
  for (int i = 0; i < 12; ++i) cc.y.push_back(1.0 + data.normal());
  const ConjugateGaussianModel model(cc);
  TemperingSchedule schedule;
  schedule.alphas = {0.3, 0.6};
  schedule.mcmc_counts = {2, 2};
  schedule.model_name = model.name();
  CoupledRunConfig rc;
  rc.n_particles = 8;
  rc.rho = 0.5;
  rc.min_steps = 6;
  rc.max_steps = 200;
  const auto runs = run_replicates(model, schedule, rc, 902, 40, kWorkers);

  std::size_t checked = 0;
  for (const auto& run : runs) {
    if (!(run.met && run.completed)) continue;
    for (std::size_t k = 1; k <= run.steps; ++k)
      for (const StatSource source : {StatSource::rao_blackwell, StatSource::single_path}) {
        if (h_bar_k_l(run, 0, k, k, source) != h_hat_k(run, 0, k, source)) {
          detail = fmt("l = k reduction broke in memory at replicate %zu, k = %zu",
                       run.replicate, k);
          return false;
        }
        ++checked;
      }
  }

  const auto path = std::filesystem::temp_directory_path() / "cpmcmc_acceptance_c9.jsonl";
  write_run_store(path.string(), runs);
  const auto loaded = read_run_store(path.string());
  std::filesystem::remove(path);
  for (const auto& run : loaded) {
    if (!(run.met && run.completed)) continue;
    for (std::size_t k = 1; k <= run.steps; ++k) {
      if (h_bar_k_l(run, 0, k, k) != h_hat_k(run, 0, k)) {
        detail = fmt("l = k reduction broke on the stored run %zu, k = %zu", run.replicate, k);
        return false;
      }
      ++checked;
    }
  }
  if (checked < 200) {
    detail = fmt("only %zu readouts exercised", checked);
    return false;
  }

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
  detail = fmt(
      "l = k reduction bitwise-exact on %zu readouts including a store round trip, worked "
      "example exact; elapsed %.3f s (pinned: equality of doubles, < 1 s)",
      checked, elapsed.count());
  return elapsed.count() < 1.0;
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) criterion = std::atoi(argv[++i]);
  }
  if (criterion < 1 || criterion > 9) {
    std::fprintf(stderr, "usage: acceptance --criterion N   (N in 1..9)\n");
    return 2;
  }
  std::string detail;
  bool pass = false;
  try {
    switch (criterion) {
      case 1: pass = criterion_1(detail); break;
      case 2: pass = criterion_2(detail); break;
      case 3: pass = criterion_3(detail); break;
      case 4: pass = criterion_4(detail); break;
      case 5: pass = criterion_5(detail); break;
      case 6: pass = criterion_6(detail); break;
      case 7: pass = criterion_7(detail); break;
      case 8: pass = criterion_8(detail); break;
      case 9: pass = criterion_9(detail); break;
    }
  } catch (const std::exception& e) {
    detail = fmt("unhandled exception: %s", e.what());
    pass = false;
  }
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  return pass ? 0 : 1;
}
