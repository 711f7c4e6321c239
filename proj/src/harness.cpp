#include "oudw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "oudw/estimators.hpp"
#include "oudw/rng.hpp"
#include "oudw/sde.hpp"

namespace oudw {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "': cannot parse number '" + value + "'");
  }
}

void validate_spec(const ExperimentSpec& spec) {
  validate(spec.params);
  grid_intervals(spec.horizon, spec.step);
  if (spec.replications == 0)
    throw std::invalid_argument("replications must be positive");
  if (spec.alpha.has_value() != spec.z_alpha.has_value())
    throw std::invalid_argument(
        "alpha and z_alpha must be given together");
  if (spec.alpha && !(*spec.alpha > 0.0 && *spec.alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
}

}  // namespace

ExperimentSpec parse_experiment_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("config: duplicate key '" + key + "'");
  }

  static const char* known[] = {"theta",        "rho",  "horizon", "step",
                                "replications", "seed", "alpha",   "z_alpha"};
  for (const auto& [key, value] : kv) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return key == k;
        }) == std::end(known))
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  for (const char* req : {"theta", "rho", "horizon", "step", "replications",
                          "seed"}) {
    if (!kv.count(req))
      throw std::invalid_argument("config: missing required key '" +
                                  std::string(req) + "'");
  }

  ExperimentSpec spec;
  spec.params.theta = parse_double("theta", kv["theta"]);
  spec.params.rho = parse_double("rho", kv["rho"]);
  spec.horizon = parse_double("horizon", kv["horizon"]);
  spec.step = parse_double("step", kv["step"]);
  const double reps = parse_double("replications", kv["replications"]);
  if (!(reps >= 1.0) || reps != std::floor(reps))
    throw std::invalid_argument("replications must be a positive integer");
  spec.replications = static_cast<std::size_t>(reps);
  try {
    spec.seed = std::stoull(kv["seed"]);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key 'seed': cannot parse '" +
                                kv["seed"] + "'");
  }
  if (kv.count("alpha")) spec.alpha = parse_double("alpha", kv["alpha"]);
  if (kv.count("z_alpha"))
    spec.z_alpha = parse_double("z_alpha", kv["z_alpha"]);
  validate_spec(spec);
  return spec;
}

ExperimentSpec load_experiment_config(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw std::invalid_argument("cannot open config file " + filename);
  return parse_experiment_config(in);
}

ExperimentSummary replicate(const ExperimentSpec& spec) {
  validate_spec(spec);
  const std::size_t r_total = spec.replications;
  std::vector<ReplicateRow> rows(r_total);
  std::vector<char> ok(r_total, 0);

  auto run_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t r = begin; r < r_total; r += stride) {
      const SamplePath path = simulate_exact(
          spec.params, spec.horizon, spec.step, derive_stream(spec.seed, r));
      try {
        const EstimationResult est = estimate(path);
        ReplicateRow& row = rows[r];
        row.theta_hat = est.theta_hat;
        row.rho_hat = est.rho_hat;
        row.dw = est.dw;
        const double t = est.stats.horizon;
        row.z_stat = 4.0 * (t * t) * (est.rho_hat * est.rho_hat);
        row.l_hat_rate = est.stats.l_hat_t / t;
        std::vector<double> vsq(path.points());
        for (std::size_t i = 0; i < path.points(); ++i)
          vsq[i] = path.v[i] * path.v[i];
        row.v_energy_rate = trapezoid(vsq, path.step) / t;
        ok[r] = 1;
      } catch (const DegeneratePathError&) {
        ok[r] = 0;
      }
    }
  };

  const unsigned workers = std::max(1u, spec.threads);
  if (workers == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(run_range, w, workers);
    for (auto& th : pool) th.join();
  }

  ExperimentSummary sum;
  sum.spec = spec;
  sum.targets = limits(spec.params);
  std::vector<ReplicateRow> kept;
  kept.reserve(r_total);
  for (std::size_t r = 0; r < r_total; ++r)
    if (ok[r]) kept.push_back(rows[r]);
  sum.degenerate = r_total - kept.size();
  sum.completed = kept.size();
  sum.rows = std::move(kept);
  if (sum.rows.empty()) return sum;

  const double t = spec.horizon;
  const double sqt = std::sqrt(t);
  std::vector<double> th_err, rh_err;
  th_err.reserve(sum.rows.size());
  rh_err.reserve(sum.rows.size());
  std::size_t rejections = 0;
  for (const ReplicateRow& row : sum.rows) {
    sum.mean_theta_hat += row.theta_hat;
    sum.mean_rho_hat += row.rho_hat;
    sum.mean_dw += row.dw;
    sum.mean_l_hat_rate += row.l_hat_rate;
    sum.mean_v_energy_rate += row.v_energy_rate;
    th_err.push_back(sqt * (row.theta_hat - sum.targets.theta_star));
    rh_err.push_back(sqt * (row.rho_hat - sum.targets.rho_star));
    if (spec.z_alpha && row.z_stat > *spec.z_alpha) ++rejections;
  }
  const double n = static_cast<double>(sum.rows.size());
  sum.mean_theta_hat /= n;
  sum.mean_rho_hat /= n;
  sum.mean_dw /= n;
  sum.mean_l_hat_rate /= n;
  sum.mean_v_energy_rate /= n;
  if (spec.alpha) sum.rejection_rate = static_cast<double>(rejections) / n;

  if (sum.rows.size() >= 2) {
    sum.theta_scaled = moments(th_err);
    sum.theta_ks = ks_normal(th_err, 0.0,
                             std::sqrt(-2.0 * sum.targets.theta_star));
    if (spec.params.rho < 0.0) {
      sum.rho_scaled = moments(rh_err);
      sum.scaled_cov = covariance(th_err, rh_err);
      const GammaCovariance g = covariance_gamma(spec.params);
      sum.rho_ks = ks_normal(rh_err, 0.0, std::sqrt(g.sigma_rho_sq));
    }
  }
  return sum;
}

void write_raw_csv(const std::vector<ReplicateRow>& rows, std::ostream& out) {
  out << "rep,theta_hat,rho_hat,dw,z_stat\n";
  char buf[128];
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g\n", r,
                  rows[r].theta_hat, rows[r].rho_hat, rows[r].dw,
                  rows[r].z_stat);
    out << buf;
  }
}

NullDistributionResult null_distribution_experiment(
    double theta, double horizon, double step, std::size_t replications,
    std::uint64_t seed, const WSamplerConfig& wcfg) {
  ExperimentSpec spec;
  spec.params = {theta, 0.0};
  spec.horizon = horizon;
  spec.step = step;
  spec.replications = replications;
  spec.seed = seed;
  const ExperimentSummary sum = replicate(spec);

  NullDistributionResult out;
  out.t_rho_hat.reserve(sum.rows.size());
  for (const ReplicateRow& row : sum.rows)
    out.t_rho_hat.push_back(spec.horizon * row.rho_hat);
  out.w_draws = sample_w(wcfg);
  out.ks = ks_two_sample(out.t_rho_hat, out.w_draws);
  return out;
}

std::vector<PowerRow> level_power_experiment(
    double theta, const std::vector<double>& rho_grid, double horizon,
    double step, std::size_t replications, double alpha, double z_alpha,
    std::uint64_t seed, unsigned threads) {
  std::vector<PowerRow> table;
  table.reserve(rho_grid.size());
  for (std::size_t gi = 0; gi < rho_grid.size(); ++gi) {
    ExperimentSpec spec;
    spec.params = {theta, rho_grid[gi]};
    spec.horizon = horizon;
    spec.step = step;
    spec.replications = replications;
    spec.seed = derive_stream(seed, gi);
    spec.alpha = alpha;
    spec.z_alpha = z_alpha;
    spec.threads = threads;
    const ExperimentSummary sum = replicate(spec);
    PowerRow row;
    row.rho = rho_grid[gi];
    row.rate = sum.rejection_rate.value_or(0.0);
    row.rejections =
        static_cast<std::size_t>(std::lround(row.rate * sum.completed));
    row.std_error = sum.completed > 0
                        ? std::sqrt(row.rate * (1.0 - row.rate) /
                                    static_cast<double>(sum.completed))
                        : 0.0;
    table.push_back(row);
  }
  return table;
}

std::array<double, 3> stationary_moment_targets(const ModelParams& p) {
  validate(p);
  if (p.rho == 0.0)
    throw std::domain_error(
        "stationary moment targets require rho < 0");
  const double ts = p.theta + p.rho;
  return {-1.0 / (2.0 * ts), -1.0 / (2.0 * p.theta * p.rho * ts), 0.0};
}

std::array<double, 3> stationary_moment_targets_numeric(const ModelParams& p) {
  validate(p);
  if (p.rho == 0.0)
    throw std::domain_error(
        "stationary moment targets require rho < 0");
  const double ts = p.theta + p.rho;
  const double tr = p.theta * p.rho;
  Eigen::Matrix3d c;
  c << 2.0 * ts, 0.0, -2.0 * tr,
       0.0, 0.0, 2.0,
       1.0, -tr, ts;
  const Eigen::Vector3d rhs(-1.0, 0.0, 0.0);
  const Eigen::Vector3d u = c.partialPivLu().solve(rhs);
  return {u(0), u(1), u(2)};
}

}  // namespace oudw
