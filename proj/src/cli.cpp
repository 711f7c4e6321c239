#include "oudw/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "oudw/json_io.hpp"
#include "oudw/path_io.hpp"
#include "oudw/sde.hpp"
#include "oudw/wdist.hpp"

namespace oudw {

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("OUDW_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(
          "OUDW_SEED is set but is not an unsigned integer");
    }
  }
  return 1;
}

void emit(const nlohmann::json& j, const std::string& out_file,
          std::ostream& out) {
  if (out_file.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out_file);
  if (!f)
    throw std::invalid_argument("cannot open " + out_file + " for writing");
  f << j.dump(2) << "\n";
}

WMethod parse_method(const std::string& name) {
  if (name == "kl") return WMethod::kKarhunenLoeve;
  if (name == "path") return WMethod::kBrownianPath;
  throw std::invalid_argument("method must be 'kl' or 'path'");
}

const char* method_name(WMethod m) {
  return m == WMethod::kKarhunenLoeve ? "kl" : "path";
}

struct SeedOption {
  std::uint64_t value = 0;
  bool given = false;

  std::uint64_t resolve() const { return given ? value : default_seed(); }
};

void add_seed(CLI::App* cmd, SeedOption& seed) {
  cmd->add_option("--seed", seed.value, "RNG seed (default: OUDW_SEED or 1)")
      ->each([&seed](const std::string&) { seed.given = true; });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact simulation, estimation and serial-correlation testing "
               "of an Ornstein-Uhlenbeck process driven by an "
               "Ornstein-Uhlenbeck noise"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate a path, write CSV");
  double sim_theta = 0.0, sim_rho = 0.0, sim_horizon = 0.0, sim_step = 0.0;
  SeedOption sim_seed;
  std::string sim_out;
  sim->add_option("--theta", sim_theta, "drift rate of X (< 0)")->required();
  sim->add_option("--rho", sim_rho, "drift rate of the noise (<= 0)")
      ->required();
  sim->add_option("--horizon", sim_horizon, "time horizon T")->required();
  sim->add_option("--step", sim_step, "grid step h")->required();
  add_seed(sim, sim_seed);
  sim->add_option("--out", sim_out, "output CSV file")->required();

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate drift rates from CSV");
  std::string est_in, est_out;
  est->add_option("--in", est_in, "input path CSV")->required();
  est->add_option("--out", est_out, "write JSON here instead of stdout");

  // test
  auto* tst = app.add_subcommand(
      "test", "serial-correlation test of the driving noise");
  std::string tst_in, tst_out;
  double tst_alpha = 0.0, tst_zalpha = -1.0;
  tst->add_option("--in", tst_in, "input path CSV")->required();
  tst->add_option("--alpha", tst_alpha, "test level in (0, 1)")->required();
  tst->add_option("--z-alpha", tst_zalpha,
                  "critical value at level alpha (see `quantile`)")
      ->required();
  tst->add_option("--out", tst_out, "write JSON here instead of stdout");

  // limits
  auto* lim = app.add_subcommand("limits", "asymptotic laws for (theta, rho)");
  double lim_theta = 0.0, lim_rho = 0.0;
  lim->add_option("--theta", lim_theta, "drift rate of X (< 0)")->required();
  lim->add_option("--rho", lim_rho, "drift rate of the noise (<= 0)")
      ->required();

  // wdist
  auto* wd = app.add_subcommand(
      "wdist", "draw from the limiting distribution, write CSV");
  std::string wd_method = "kl", wd_out;
  std::size_t wd_count = 10000;
  int wd_terms = 200, wd_steps = 2000;
  SeedOption wd_seed;
  wd->add_option("--method", wd_method, "sampler: kl | path");
  wd->add_option("--count", wd_count, "number of draws");
  wd->add_option("--kl-terms", wd_terms, "series truncation (kl method)");
  wd->add_option("--path-steps", wd_steps, "grid size (path method)");
  add_seed(wd, wd_seed);
  wd->add_option("--out", wd_out, "output CSV file")->required();

  // quantile
  auto* qt = app.add_subcommand(
      "quantile", "Monte Carlo critical values of the test statistic");
  std::vector<double> qt_alphas;
  std::string qt_method = "kl", qt_out;
  std::size_t qt_count = 1000000;
  int qt_terms = 200, qt_steps = 2000;
  SeedOption qt_seed;
  qt->add_option("--alpha", qt_alphas, "level(s), repeatable");
  qt->add_option("--method", qt_method, "sampler: kl | path");
  qt->add_option("--count", qt_count, "number of draws");
  qt->add_option("--kl-terms", qt_terms, "series truncation (kl method)");
  qt->add_option("--path-steps", qt_steps, "grid size (path method)");
  add_seed(qt, qt_seed);
  qt->add_option("--out", qt_out, "write the table as CSV here");

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo experiment from a config");
  std::string mc_config, mc_out, mc_raw;
  unsigned mc_threads = 1;
  mc->add_option("--config", mc_config, "key = value experiment config")
      ->required();
  mc->add_option("--out", mc_out, "write summary JSON here instead of stdout");
  mc->add_option("--raw", mc_raw, "write per-replicate estimates CSV here");
  mc->add_option("--threads", mc_threads, "worker threads (default 1)");

  try {
    std::vector<std::string> argv{"oudw"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<const char*> cargv;
    cargv.reserve(argv.size());
    for (const std::string& a : argv) cargv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        out << app.help();
        return 0;
      }
      err << "error: " << e.what() << "\n";
      return 1;
    }

    if (sim->parsed()) {
      const std::uint64_t seed = sim_seed.resolve();
      const SamplePath path = simulate_exact({sim_theta, sim_rho}, sim_horizon,
                                             sim_step, seed);
      save_path_csv(path, sim_out);
      emit({{"spec_version", kSpecVersion},
            {"seed", seed},
            {"horizon", path.horizon},
            {"step", path.step},
            {"points", path.points()},
            {"out", sim_out}},
           "", out);
    } else if (est->parsed()) {
      emit(to_json(estimate(load_path_csv(est_in))), est_out, out);
    } else if (tst->parsed()) {
      const TestOutcome outcome =
          run_test(load_path_csv(tst_in), tst_alpha, tst_zalpha);
      emit(to_json(outcome), tst_out, out);
    } else if (lim->parsed()) {
      const ModelParams p{lim_theta, lim_rho};
      const Limits l = limits(p);
      nlohmann::json j{{"spec_version", kSpecVersion},
                       {"theta", p.theta},
                       {"rho", p.rho},
                       {"theta_star", l.theta_star},
                       {"rho_star", l.rho_star},
                       {"d_star", l.d_star}};
      if (p.rho < 0.0) {
        const GammaCovariance g = covariance_gamma(p);
        const Eigen::Matrix2d d = delta_matrix(p);
        j["sigma_theta_sq"] = g.sigma_theta_sq;
        j["ell"] = g.ell;
        j["sigma_rho_sq"] = g.sigma_rho_sq;
        j["sigma_d_sq"] = g.sigma_d_sq;
        j["delta"] = {d(0, 0), d(1, 1)};
        j["residual_energy_limit"] = residual_energy_limit(p);
      } else {
        // The gaussian fluctuation laws need rho < 0; the null regime has
        // its own limiting distribution (see `wdist`).
        j["sigma_theta_sq"] = -2.0 * l.theta_star;
        j["ell"] = nullptr;
        j["sigma_rho_sq"] = nullptr;
        j["sigma_d_sq"] = nullptr;
        j["delta"] = nullptr;
        j["residual_energy_limit"] = nullptr;
      }
      emit(j, "", out);
    } else if (wd->parsed()) {
      WSamplerConfig cfg;
      cfg.method = parse_method(wd_method);
      cfg.kl_terms = wd_terms;
      cfg.path_steps = wd_steps;
      cfg.count = wd_count;
      cfg.seed = wd_seed.resolve();
      const std::vector<double> draws = sample_w(cfg);
      std::ofstream f(wd_out);
      if (!f)
        throw std::invalid_argument("cannot open " + wd_out +
                                    " for writing");
      f << "w\n";
      char buf[64];
      double mean = 0.0;
      for (double w : draws) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", w);
        f << buf;
        mean += w;
      }
      mean /= static_cast<double>(draws.size());
      emit({{"spec_version", kSpecVersion},
            {"method", method_name(cfg.method)},
            {"count", draws.size()},
            {"seed", cfg.seed},
            {"mean", mean},
            {"out", wd_out}},
           "", out);
    } else if (qt->parsed()) {
      WSamplerConfig cfg;
      cfg.method = parse_method(qt_method);
      cfg.kl_terms = qt_terms;
      cfg.path_steps = qt_steps;
      cfg.count = qt_count;
      cfg.seed = qt_seed.resolve();
      if (qt_alphas.empty()) qt_alphas.push_back(0.05);
      const WQuantileTable table(cfg);
      nlohmann::json rows = nlohmann::json::array();
      std::string csv = "alpha,z_alpha,ci_low,ci_high,draws,method,seed\n";
      char buf[256];
      for (double a : qt_alphas) {
        const QuantileEstimate q = table.quantile(a);
        rows.push_back({{"alpha", a},
                        {"z_alpha", q.z_alpha},
                        {"ci_low", q.ci_low},
                        {"ci_high", q.ci_high}});
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%zu,%s,%llu\n",
                      a, q.z_alpha, q.ci_low, q.ci_high, table.draws(),
                      method_name(cfg.method),
                      static_cast<unsigned long long>(cfg.seed));
        csv += buf;
      }
      if (!qt_out.empty()) {
        std::ofstream f(qt_out);
        if (!f)
          throw std::invalid_argument("cannot open " + qt_out +
                                      " for writing");
        f << csv;
      }
      emit({{"spec_version", kSpecVersion},
            {"method", method_name(cfg.method)},
            {"draws", table.draws()},
            {"seed", cfg.seed},
            {"quantiles", rows}},
           "", out);
    } else if (mc->parsed()) {
      ExperimentSpec spec = load_experiment_config(mc_config);
      spec.threads = mc_threads;
      const ExperimentSummary sum = replicate(spec);
      if (!mc_raw.empty()) {
        std::ofstream f(mc_raw);
        if (!f)
          throw std::invalid_argument("cannot open " + mc_raw +
                                      " for writing");
        write_raw_csv(sum.rows, f);
      }
      emit(to_json(sum), mc_out, out);
    }
    return 0;
  } catch (const DegeneratePathError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace oudw
