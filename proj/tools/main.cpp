// Command line frontend: adapt tempering schedules, launch batches of
// coupled replicates, turn run stores into estimates and diagnostics, and
// generate synthetic graphical-model data.
//
// Exit codes: 0 success, 2 config error, 3 numerical error, 4 budget
// exhausted with a partial run store.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpmcmc/adaptation.hpp"
#include "cpmcmc/errors.hpp"
#include "cpmcmc/estimator.hpp"
#include "cpmcmc/ggm/ggm.hpp"
#include "cpmcmc/model.hpp"
#include "cpmcmc/models/horseshoe.hpp"
#include "cpmcmc/models/mixture.hpp"
#include "cpmcmc/rng.hpp"
#include "cpmcmc/smc.hpp"
#include "cpmcmc/store.hpp"

namespace {

using nlohmann::json;
using namespace cpmcmc;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitPartial = 4;

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error("config " + path + ": " + e.what());
  }
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw config_error(where + ": missing required key \"" + key + "\"");
  return j.at(key);
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

// Flat-likelihood model: adaptation terminates with an empty ladder and
// every sampler layer runs at trivial cost. Used for smoke tests.
class ConstantModel final : public Model {
 public:
  explicit ConstantModel(double log_lik) : log_lik_(log_lik) {}

  std::string name() const override { return "constant"; }
  Point sample_prior(RngStream rng) const override { return Point::of(rng.normal()); }
  double log_likelihood(const Point&) const override { return log_lik_; }
  Point inner_step(const Point&, double, RngStream rng) const override {
    // With a constant likelihood the tempered posterior is the prior at
    // every exponent, so an independent refresh is a valid kernel.
    return Point::of(rng.normal());
  }
  std::vector<double> summary_stats(const Point& x) const override {
    return {log_lik_, x.as<double>()};
  }
  std::vector<double> estimands(const Point& x) const override { return {x.as<double>()}; }
  std::vector<std::string> estimand_names() const override { return {"x"}; }
  std::optional<double> log_likelihood_sup() const override { return log_lik_; }
  std::string serialize(const Point& x) const override {
    std::string out;
    detail::append_double(out, x.as<double>());
    return out;
  }

 private:
  double log_lik_;
};

std::vector<double> single_column(const std::vector<std::vector<double>>& rows,
                                  const std::string& what) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != 1) throw config_error(what + ": expected a single-column CSV");
    out.push_back(r[0]);
  }
  return out;
}

Eigen::MatrixXd dense_matrix(const std::vector<std::vector<double>>& rows,
                             const std::string& what) {
  if (rows.empty()) throw config_error(what + ": empty CSV");
  const std::size_t cols = rows[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw config_error(what + ": ragged CSV");
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

// Datasets are pinned by the config alone: simulate blocks carry their own
// seed, so adapt and run invocations with different --seed values still
// see the same data.
std::unique_ptr<Model> build_model(const json& cfg) {
  const json& mc = require(cfg, "model", "config");
  const std::string name = require(mc, "name", "model").get<std::string>();
  if (name == "constant") {
    return std::make_unique<ConstantModel>(get_or(mc, "log_lik", 0.0));
  }
  if (name == "mixture") {
    MixtureConfig c;
    c.d_x = get_or<std::size_t>(mc, "d_x", 2);
    if (mc.contains("data")) {
      c.y = single_column(read_csv_matrix(mc.at("data").get<std::string>()), "mixture data");
    } else {
      const json& sim = require(mc, "simulate", "mixture model");
      c.y = simulate_mixture_data(
          require(sim, "x_star", "mixture simulate").get<std::vector<double>>(),
          require(sim, "d_y", "mixture simulate").get<std::size_t>(),
          RngStream(require(sim, "seed", "mixture simulate").get<std::uint64_t>()));
    }
    return std::make_unique<MixtureModel>(std::move(c));
  }
  if (name == "horseshoe") {
    HorseshoeConfig c;
    if (mc.contains("design")) {
      c.W = dense_matrix(read_csv_matrix(mc.at("design").get<std::string>()), "horseshoe design");
      const auto y = single_column(
          read_csv_matrix(require(mc, "response", "horseshoe model").get<std::string>()),
          "horseshoe response");
      c.y = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
    } else {
      const json& sim = require(mc, "simulate", "horseshoe model");
      const HorseshoeSimulation s =
          simulate_horseshoe_data(RngStream(require(sim, "seed", "horseshoe simulate").get<std::uint64_t>()));
      c.W = s.W;
      c.y = s.y;
    }
    return std::make_unique<HorseshoeModel>(std::move(c));
  }
  if (name == "ggm") {
    const auto rows = read_csv_matrix(require(mc, "data", "ggm model").get<std::string>());
    GgmConfig c;
    c.U = scatter_matrix(rows);
    c.n = static_cast<double>(rows.size());
    c.delta = get_or(mc, "delta", 3.0);
    return std::make_unique<GgmModel>(std::move(c));
  }
  throw config_error("unknown model \"" + name + "\" (known: constant, ggm, horseshoe, mixture)");
}

TemperingSchedule load_schedule_for(const Model& model, const std::string& path) {
  TemperingSchedule schedule = TemperingSchedule::load(path);
  if (schedule.model_name != model.name())
    throw config_error("schedule " + path + " was adapted for model \"" + schedule.model_name +
                       "\" but the config names \"" + model.name() + "\"");
  return schedule;
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
  const std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

void print_meeting_summary(const std::vector<CoupledRun>& runs) {
  std::vector<std::size_t> taus;
  std::size_t unmet = 0;
  std::size_t incomplete = 0;
  for (const auto& r : runs) {
    if (!r.completed) ++incomplete;
    if (r.met)
      taus.push_back(r.tau);
    else
      ++unmet;
  }
  std::printf("replicates: %zu, met: %zu, not met: %zu, incomplete: %zu\n", runs.size(),
              taus.size(), unmet, incomplete);
  if (taus.empty()) return;
  std::sort(taus.begin(), taus.end());
  auto quantile = [&](double f) {
    return taus[static_cast<std::size_t>(f * static_cast<double>(taus.size() - 1))];
  };
  std::printf("meeting time: min %zu, median %zu, p90 %zu, max %zu\n", taus.front(),
              quantile(0.5), quantile(0.9), taus.back());

  // Doubling bins keep the histogram compact however heavy the tail is.
  struct Bin {
    std::size_t lo, hi, count;
  };
  std::vector<Bin> bins;
  for (std::size_t lo = 1, hi = 1; lo <= taus.back(); lo = hi + 1, hi *= 2)
    bins.push_back({lo, hi, 0});
  for (std::size_t t : taus)
    for (auto& b : bins)
      if (t >= b.lo && t <= b.hi) ++b.count;
  std::size_t peak = 1;
  for (const auto& b : bins) peak = std::max(peak, b.count);
  for (const auto& b : bins) {
    const auto width = static_cast<std::size_t>(
        std::lround(40.0 * static_cast<double>(b.count) / static_cast<double>(peak)));
    std::printf("  tau %6zu-%-6zu %-40s %zu\n", b.lo, b.hi, std::string(width, '#').c_str(),
                b.count);
  }
}

int cmd_adapt(const json& cfg, std::uint64_t seed, const std::string& out) {
  const auto model = build_model(cfg);
  AdaptationConfig ac;
  if (cfg.contains("adapt")) {
    const json& a = cfg.at("adapt");
    ac.n_pilot = get_or(a, "n_pilot", ac.n_pilot);
    ac.ess_threshold = get_or(a, "ess_threshold", ac.ess_threshold);
    ac.corr_threshold = get_or(a, "corr_threshold", ac.corr_threshold);
    ac.max_sweeps = get_or(a, "max_sweeps", ac.max_sweeps);
    ac.max_stages = get_or(a, "max_stages", ac.max_stages);
    if (a.contains("rejection_rate") && !a.at("rejection_rate").is_null())
      ac.rejection_rate = a.at("rejection_rate").get<double>();
  }

  const TemperingSchedule schedule = adapt(*model, ac, seed);
  schedule.save(out);

  std::printf("model: %s\n", model->name().c_str());
  std::printf("stages: %zu, alpha0 = %.6g\n", schedule.stages(), schedule.alpha0);
  if (!schedule.mcmc_counts.empty()) {
    std::size_t total = 0;
    std::size_t mn = schedule.mcmc_counts.front();
    std::size_t mx = mn;
    for (std::size_t m : schedule.mcmc_counts) {
      total += m;
      mn = std::min(mn, m);
      mx = std::max(mx, m);
    }
    std::printf("sweeps per stage: min %zu, mean %.2f, max %zu, total %zu\n", mn,
                static_cast<double>(total) / static_cast<double>(schedule.mcmc_counts.size()), mx,
                total);
  }
  std::printf("schedule written to %s\n", out.c_str());
  return 0;
}

int cmd_run(const json& cfg, std::uint64_t seed, std::size_t workers, const std::string& out,
            bool no_timing) {
  const auto model = build_model(cfg);
  const json& r = require(cfg, "run", "config");
  const TemperingSchedule schedule =
      load_schedule_for(*model, require(r, "schedule", "run").get<std::string>());

  CoupledRunConfig rc;
  rc.n_particles = require(r, "n_particles", "run").get<std::size_t>();
  rc.rho = get_or(r, "rho", rc.rho);
  rc.min_steps = get_or(r, "min_steps", rc.min_steps);
  rc.max_steps = get_or(r, "max_steps", rc.max_steps);
  rc.resample_frac = get_or(r, "resample_frac", rc.resample_frac);
  const double budget = get_or(r, "time_budget_seconds", 0.0);
  // The budget bounds the whole batch, not each replicate: late replicates
  // stop early and land in the store flagged incomplete.
  if (budget > 0.0)
    rc.deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(budget));
  const auto replicates = require(r, "replicates", "run").get<std::size_t>();

  const std::vector<CoupledRun> runs =
      run_replicates(*model, schedule, rc, seed, replicates, workers);
  write_run_store(out, runs, no_timing);

  print_meeting_summary(runs);
  std::size_t incomplete = 0;
  for (const auto& run : runs)
    if (!run.completed) ++incomplete;
  std::printf("run store written to %s\n", out.c_str());
  if (incomplete > 0) {
    std::printf("budget exhausted: %zu of %zu replicates incomplete\n", incomplete, runs.size());
    return kExitPartial;
  }
  return 0;
}

int cmd_estimate(const json& cfg, const std::string& out) {
  const json& e = require(cfg, "estimate", "config");
  const std::string store_path = require(e, "store", "estimate").get<std::string>();
  const auto l = require(e, "l", "estimate").get<std::size_t>();
  if (l < 1) throw config_error("estimate.l must be positive");
  const json& kj = require(e, "k", "estimate");
  const bool auto_k = kj.is_string();
  if (auto_k && kj.get<std::string>() != "auto")
    throw config_error("estimate.k must be a positive integer or \"auto\"");
  std::size_t k = auto_k ? 0 : kj.get<std::size_t>();
  if (!auto_k && (k < 1 || k > l)) throw config_error("estimate requires 1 <= k <= l");
  const double confidence = get_or(e, "confidence", 0.95);

  const std::vector<CoupledRun> runs = read_run_store(store_path);
  if (runs.empty()) throw config_error("run store is empty: " + store_path);
  if (auto_k) k = std::clamp<std::size_t>(default_burn_in(runs), 1, l);

  std::size_t incomplete = 0;
  std::size_t not_met = 0;
  std::size_t below_l = 0;
  std::vector<const CoupledRun*> usable;
  for (const auto& r : runs) {
    if (!r.completed)
      ++incomplete;
    else if (!r.met)
      ++not_met;
    else if (r.steps < l)
      ++below_l;
    else
      usable.push_back(&r);
  }
  if (usable.empty())
    throw config_error("no completed run in " + store_path + " reaches l = " + std::to_string(l));

  const std::size_t n_stats = usable.front()->h.size();
  for (const auto* r : usable)
    if (r->h.size() != n_stats)
      throw config_error("run store rows disagree on the statistic count");

  std::vector<std::string> names;
  if (cfg.contains("model")) {
    names = build_model(cfg)->estimand_names();
    if (names.size() != n_stats)
      throw config_error("store has " + std::to_string(n_stats) + " statistics but the model \"" +
                         require(cfg.at("model"), "name", "model").get<std::string>() +
                         "\" reports " + std::to_string(names.size()));
  } else {
    for (std::size_t s = 0; s < n_stats; ++s) names.push_back("stat_" + std::to_string(s));
  }

  json report;
  report["store"] = store_path;
  report["k"] = k;
  report["l"] = l;
  report["confidence"] = confidence;
  report["runs"] = {{"total", runs.size()},
                    {"used", usable.size()},
                    {"incomplete", incomplete},
                    {"not_met", not_met},
                    {"below_l", below_l}};
  report["statistics"] = json::array();

  std::vector<double> means(n_stats), errs(n_stats);
  for (std::size_t s = 0; s < n_stats; ++s) {
    std::vector<double> values;
    values.reserve(usable.size());
    for (const auto* r : usable) values.push_back(h_bar_k_l(*r, s, k, l));
    json row;
    row["index"] = s;
    row["name"] = names[s];
    row["count"] = values.size();
    if (values.size() >= 2) {
      const Aggregate a = aggregate(values, confidence);
      row["mean"] = a.mean;
      row["std_error"] = a.std_error;
      row["ci_lo"] = a.ci_lo;
      row["ci_hi"] = a.ci_hi;
      row["no_variance"] = false;
      means[s] = a.mean;
      errs[s] = a.std_error;
    } else {
      row["mean"] = values[0];
      row["std_error"] = nullptr;
      row["ci_lo"] = nullptr;
      row["ci_hi"] = nullptr;
      row["no_variance"] = true;
      means[s] = values[0];
      errs[s] = std::numeric_limits<double>::quiet_NaN();
    }
    report["statistics"].push_back(std::move(row));
  }

  {
    std::ofstream f(out);
    if (!f) throw config_error("cannot write report: " + out);
    f << report.dump(2) << "\n";
  }

  const auto stat = get_or<std::size_t>(e, "statistic", 0);
  if (stat >= n_stats) throw config_error("estimate.statistic out of range");
  std::vector<std::size_t> l_grid = get_or(e, "l_grid", std::vector<std::size_t>{l});
  const std::string vt_path = sibling_path(out, "_variance_time.csv");
  {
    std::ofstream f(vt_path);
    if (!f) throw config_error("cannot write variance-time table: " + vt_path);
    f << "l,k,variance,mean_time_s,variance_times_time,flagged\n";
    for (const VarianceTimeRow& row : variance_time_curve(runs, stat, l_grid)) {
      char line[160];
      std::snprintf(line, sizeof(line), "%zu,%zu,%.17g,%.17g,%.17g,%d\n", row.l, row.k,
                    row.variance, row.mean_time_s, row.variance_times_time, row.flagged ? 1 : 0);
      f << line;
    }
  }

  std::string edges_path;
  if (cfg.contains("model") &&
      require(cfg.at("model"), "name", "model").get<std::string>() == "ggm") {
    // n_stats = p(p-1)/2 edge indicators in row-major upper-triangle order.
    std::size_t p = 1;
    while (p * (p - 1) / 2 < n_stats) ++p;
    if (p * (p - 1) / 2 != n_stats)
      throw config_error("statistic count does not match an edge-indicator table");
    edges_path = sibling_path(out, "_edges.csv");
    std::ofstream f(edges_path);
    if (!f) throw config_error("cannot write edge table: " + edges_path);
    f << "node_i,node_j,prob,std_err\n";
    std::size_t s = 0;
    for (std::size_t i = 0; i + 1 < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j, ++s) {
        char line[128];
        std::snprintf(line, sizeof(line), "%zu,%zu,%.17g,%.17g\n", i, j, means[s], errs[s]);
        f << line;
      }
  }

  std::printf("runs: %zu total, %zu used (k = %zu, l = %zu)\n", runs.size(), usable.size(), k, l);
  const std::size_t shown = std::min<std::size_t>(n_stats, 12);
  for (std::size_t s = 0; s < shown; ++s) {
    if (std::isnan(errs[s]))
      std::printf("  %-12s %.6g (single run, no variance)\n", names[s].c_str(), means[s]);
    else
      std::printf("  %-12s %.6g +/- %.3g\n", names[s].c_str(), means[s], errs[s]);
  }
  if (shown < n_stats) std::printf("  ... %zu more\n", n_stats - shown);
  std::printf("report written to %s\n", out.c_str());
  std::printf("variance-time table written to %s\n", vt_path.c_str());
  if (!edges_path.empty()) std::printf("edge probabilities written to %s\n", edges_path.c_str());
  return 0;
}

int cmd_diagnose(const json& cfg, std::uint64_t seed, const std::string& out) {
  const auto model = build_model(cfg);
  const json d = cfg.contains("diagnose") ? cfg.at("diagnose") : json::object();
  const json r = cfg.contains("run") ? cfg.at("run") : json::object();

  const std::string schedule_path =
      d.contains("schedule") ? d.at("schedule").get<std::string>()
                             : require(r, "schedule", "diagnose (or run)").get<std::string>();
  const TemperingSchedule schedule = load_schedule_for(*model, schedule_path);
  const std::size_t n = d.contains("n_particles")
                            ? d.at("n_particles").get<std::size_t>()
                            : require(r, "n_particles", "diagnose (or run)").get<std::size_t>();
  const double frac = get_or(d, "resample_frac", get_or(r, "resample_frac", 0.5));

  const ParticleSystem sys = run_smc(*model, schedule, n, frac, RngStream(seed));
  {
    std::ofstream f(out);
    if (!f) throw config_error("cannot write trace: " + out);
    for (const StageTrace& t : sys.trace) {
      json line;
      line["stage"] = t.stage;
      line["alpha"] = t.alpha;
      line["ess"] = t.ess;
      line["resampled"] = t.resampled;
      line["log_z_so_far"] = t.log_z_so_far;
      f << line.dump() << "\n";
    }
  }

  std::size_t resamples = 0;
  double min_ess = static_cast<double>(n);
  for (const StageTrace& t : sys.trace) {
    if (t.resampled) ++resamples;
    min_ess = std::min(min_ess, t.ess);
  }
  std::printf("model: %s, stages: %zu, particles: %zu\n", model->name().c_str(), sys.n_stages(),
              n);
  std::printf("reweighting events: %zu, resampled: %zu, min ESS fraction: %.3f\n",
              sys.trace.size(), resamples, min_ess / static_cast<double>(n));
  std::printf("log normalizing constant: %.6f\n", sys.log_z);
  std::printf("trace written to %s\n", out.c_str());

  if (d.contains("store")) {
    const auto runs = read_run_store(d.at("store").get<std::string>());
    print_meeting_summary(runs);
  }
  return 0;
}

int cmd_synth_ggm(const json& cfg, std::uint64_t seed, const std::string& out) {
  const json& s = require(cfg, "synth_ggm", "config");
  const auto p = require(s, "p", "synth_ggm").get<std::size_t>();
  const auto n = require(s, "n", "synth_ggm").get<std::size_t>();
  const double sparsity = require(s, "sparsity", "synth_ggm").get<double>();

  const GgmSynthetic data = ggm_synthetic(p, n, sparsity, seed);
  write_csv_matrix(out, data.Y);

  json truth;
  truth["p"] = p;
  truth["n"] = n;
  truth["sparsity"] = sparsity;
  truth["seed"] = seed;
  truth["edges"] = json::array();
  for (std::size_t i = 0; i + 1 < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (data.graph.has_edge(i, j)) truth["edges"].push_back({i, j});
  truth["precision"] = json::array();
  for (Eigen::Index i = 0; i < data.K.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < data.K.cols(); ++j) row.push_back(data.K(i, j));
    truth["precision"].push_back(std::move(row));
  }
  const std::string truth_path = sibling_path(out, "_truth.json");
  {
    std::ofstream f(truth_path);
    if (!f) throw config_error("cannot write truth file: " + truth_path);
    f << truth.dump(2) << "\n";
  }

  std::printf("p = %zu, n = %zu, true edges: %zu\n", p, n, truth["edges"].size());
  std::printf("data written to %s\n", out.c_str());
  std::printf("generating graph and precision written to %s\n", truth_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unbiased posterior estimation by coupled particle MCMC"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed_flag = 0;
  std::size_t workers = 0;
  bool no_timing = false;

  CLI::App* a_adapt = app.add_subcommand("adapt", "Build a tempering schedule from a pilot run");
  CLI::App* a_run = app.add_subcommand("run", "Run coupled replicates into a run store");
  CLI::App* a_estimate =
      app.add_subcommand("estimate", "Turn a run store into estimates with standard errors");
  CLI::App* a_diagnose =
      app.add_subcommand("diagnose", "Trace one sampler sweep and summarize a run store");
  CLI::App* a_synth = app.add_subcommand("synth-ggm", "Generate synthetic graphical-model data");

  for (CLI::App* sub : {a_adapt, a_run, a_estimate, a_diagnose, a_synth}) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed_flag, "Override the config seed");
    sub->add_option("--out", out_path, "Output path");
    sub->add_option("--workers", workers, "Worker threads, 0 = hardware count");
  }
  a_run->add_flag("--no-timing", no_timing, "Write zero wall times; reruns are byte-identical");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const json cfg = load_config(config_path);
    std::uint64_t seed = get_or<std::uint64_t>(cfg, "seed", 0);
    bool seed_given = false;
    for (const CLI::App* sub : {a_adapt, a_run, a_estimate, a_diagnose, a_synth})
      if (sub->parsed() && sub->count("--seed") > 0) seed_given = true;
    if (seed_given) seed = seed_flag;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    auto out = [&](const char* fallback) { return out_path.empty() ? fallback : out_path; };

    if (a_adapt->parsed()) return cmd_adapt(cfg, seed, out("schedule.json"));
    if (a_run->parsed()) return cmd_run(cfg, seed, workers, out("runs.jsonl"), no_timing);
    if (a_estimate->parsed()) return cmd_estimate(cfg, out("estimate.json"));
    if (a_diagnose->parsed()) return cmd_diagnose(cfg, seed, out("trace.jsonl"));
    if (a_synth->parsed()) return cmd_synth_ggm(cfg, seed, out("ggm_data.csv"));
    return kExitConfig;
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}
