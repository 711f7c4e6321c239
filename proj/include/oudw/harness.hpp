#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oudw/asymptotics.hpp"
#include "oudw/model.hpp"
#include "oudw/stats.hpp"
#include "oudw/wdist.hpp"

namespace oudw {

/// One Monte Carlo experiment: R independent paths of a fixed model, each
/// estimated. alpha / z_alpha switch on the rejection-rate column (both or
/// neither). Replicate r always draws from the stream derived from
/// (seed, r), so results are independent of thread count and scheduling.
struct ExperimentSpec {
  ModelParams params{-1.0, 0.0};
  double horizon = 0.0;
  double step = 0.0;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
  std::optional<double> alpha;
  std::optional<double> z_alpha;
  unsigned threads = 1;
};

/// Plain `key = value` config with `#` comments. Required keys: theta, rho,
/// horizon, step, replications, seed. Optional: alpha, z_alpha.
ExperimentSpec parse_experiment_config(std::istream& in);
ExperimentSpec load_experiment_config(const std::string& filename);

struct ReplicateRow {
  double theta_hat = 0.0;
  double rho_hat = 0.0;
  double dw = 0.0;
  double z_stat = 0.0;        ///< 4 T^2 rho_hat^2
  double l_hat_rate = 0.0;    ///< L_hat_T / T, residual energy rate
  double v_energy_rate = 0.0; ///< int V^2 dt / T from the simulated noise
};

struct ExperimentSummary {
  ExperimentSpec spec;
  std::size_t completed = 0;
  std::size_t degenerate = 0;
  Limits targets{};
  double mean_theta_hat = 0.0;
  double mean_rho_hat = 0.0;
  double mean_dw = 0.0;
  double mean_l_hat_rate = 0.0;
  double mean_v_energy_rate = 0.0;
  /// Fluctuation diagnostics of sqrt(T) (theta_hat - theta_star); defined
  /// for R >= 2. The theta marginal of the CLT holds in both regimes.
  std::optional<MomentSummary> theta_scaled;
  std::optional<KsResult> theta_ks;
  /// Same for rho_hat; only meaningful (and only filled) when rho < 0.
  std::optional<MomentSummary> rho_scaled;
  std::optional<KsResult> rho_ks;
  std::optional<double> scaled_cov;
  std::optional<double> rejection_rate;
  std::vector<ReplicateRow> rows;
};

ExperimentSummary replicate(const ExperimentSpec& spec);

/// rep,theta_hat,rho_hat,dw,z_stat with 17 significant digits.
void write_raw_csv(const std::vector<ReplicateRow>& rows, std::ostream& out);

/// Null-regime check: the empirical law of T rho_hat under rho = 0 against
/// Monte Carlo draws of W.
struct NullDistributionResult {
  KsResult ks;
  std::vector<double> t_rho_hat;
  std::vector<double> w_draws;
};

NullDistributionResult null_distribution_experiment(
    double theta, double horizon, double step, std::size_t replications,
    std::uint64_t seed, const WSamplerConfig& wcfg);

/// Empirical rejection rate over a grid of rho values at a fixed critical
/// value; rho = 0 rows measure level, rho < 0 rows measure power.
struct PowerRow {
  double rho = 0.0;
  std::size_t rejections = 0;
  double rate = 0.0;
  double std_error = 0.0;
};

std::vector<PowerRow> level_power_experiment(
    double theta, const std::vector<double>& rho_grid, double horizon,
    double step, std::size_t replications, double alpha, double z_alpha,
    std::uint64_t seed, unsigned threads = 1);

/// Stationary second moments (E[X^2], E[Sigma^2], E[X Sigma]): the closed
/// form -C^{-1} I of the moment ODE, and the same thing through a numeric
/// 3x3 solve as a cross-check. Requires rho < 0.
std::array<double, 3> stationary_moment_targets(const ModelParams& p);
std::array<double, 3> stationary_moment_targets_numeric(const ModelParams& p);

}  // namespace oudw
