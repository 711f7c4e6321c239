// Acceptance gate: reproduces the asymptotic theory at desk scale and prints
// one verdict line per criterion. Exits nonzero if any line fails.
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "oudw/asymptotics.hpp"
#include "oudw/dw_test.hpp"
#include "oudw/estimators.hpp"
#include "oudw/harness.hpp"
#include "oudw/rng.hpp"
#include "oudw/sde.hpp"
#include "oudw/stats.hpp"
#include "oudw/wdist.hpp"

using namespace oudw;

namespace {

constexpr double kPi = 3.14159265358979323846;

// critical value at level 0.05; regenerate with
//   oudw quantile --alpha 0.05 --method kl --count 1000000 --seed 2024
constexpr double kZ05 = 262.76987878917726;

int failures = 0;

void report(bool ok, const char* fmt, ...) {
  char buf[512];
  std::va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", buf);
  if (!ok) ++failures;
}

bool within(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

// Composite Simpson for the transition covariance integral; at 2000 panels
// the rule error sits far below the 1e-10 gate.
Eigen::Matrix2d quadrature_cov(const ModelParams& p, double h) {
  const Eigen::Matrix2d a = drift_matrix(p);
  const Eigen::Vector2d b(1.0, 1.0);
  const int n = 4000;  // subintervals, even
  const double dx = h / n;
  Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
  for (int i = 0; i <= n; ++i) {
    const Eigen::Vector2d v = (a * (dx * i)).exp() * b;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1) ? 4.0 : 2.0;
    acc += (w * dx / 3.0) * (v * v.transpose());
  }
  return acc;
}

// Shared Monte Carlo experiment: (theta, rho) = (-2, -1), T = 200, h = 0.01,
// R = 2000. Criteria 1, 2, 5 (Durbin-Watson variance), 6 and 8 read it.
struct ExperimentA {
  double t_eff = 0.0;
  std::size_t completed = 0;
  std::vector<double> th, rh, dw, v1, v2;
  bool identities = true;
};

ExperimentA run_experiment_a() {
  const ModelParams params{-2.0, -1.0};
  const std::size_t reps = 2000;
  ExperimentA a;
  for (std::uint64_t r = 0; r < reps; ++r) {
    const SamplePath path =
        simulate_exact(params, 200.0, 0.01, derive_stream(5, r));
    a.t_eff = path.horizon;
    const EstimationResult est = estimate(path);
    const TestOutcome outcome = run_test(path, 0.05, kZ05);
    const Eigen::Vector2d vt = estimate_vartheta(path);
    a.th.push_back(est.theta_hat);
    a.rh.push_back(est.rho_hat);
    a.dw.push_back(est.dw);
    a.v1.push_back(vt(0));
    a.v2.push_back(vt(1));
    const double t = path.horizon;
    if (est.dw != 2.0 * (1.0 - est.rho_hat)) a.identities = false;
    if (outcome.z_stat != 4.0 * (t * t) * (est.rho_hat * est.rho_hat))
      a.identities = false;
    ++a.completed;
  }
  return a;
}

std::vector<double> scale_errors(const std::vector<double>& v, double target,
                                 double t) {
  const double sqt = std::sqrt(t);
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(sqt * (x - target));
  return out;
}

std::vector<double> terminal_sample(double step, std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(2000);
  for (std::uint64_t r = 0; r < 2000; ++r)
    out.push_back(
        simulate_exact({-2.0, -1.0}, 50.0, step, derive_stream(seed, r)).x.back());
  return out;
}

}  // namespace

int main() {
  const Limits lim = limits({-2.0, -1.0});
  const GammaCovariance gam = covariance_gamma({-2.0, -1.0});
  const ExperimentA a = run_experiment_a();
  const double n = static_cast<double>(a.completed);

  // 1: consistency of both estimators at the ergodic limit
  {
    const MomentSummary mt = moments(a.th);
    const MomentSummary mr = moments(a.rh);
    const double se_t = std::sqrt(mt.variance / n);
    const double se_r = std::sqrt(mr.variance / n);
    const double dev_t = (mt.mean - lim.theta_star) / se_t;
    const double dev_r = (mr.mean - lim.rho_star) / se_r;
    report(a.completed == 2000 && std::abs(dev_t) < 3.0 &&
               std::abs(dev_r) < 3.0,
           "1 consistency: R=%zu, mean theta_hat=%.5f (dev %.2f se, target %g),"
           " mean rho_hat=%.5f (dev %.2f se, target %.5f)",
           a.completed, mt.mean, dev_t, lim.theta_star, mr.mean, dev_r,
           lim.rho_star);
  }

  // 2: central limit theorem for (theta_hat, rho_hat)
  const std::vector<double> sth = scale_errors(a.th, lim.theta_star, a.t_eff);
  const std::vector<double> srh = scale_errors(a.rh, lim.rho_star, a.t_eff);
  {
    const MomentSummary mt = moments(sth);
    const MomentSummary mr = moments(srh);
    const double cov = covariance(sth, srh);
    const bool ok = within(mt.variance, gam.sigma_theta_sq, 0.15) &&
                    within(mr.variance, gam.sigma_rho_sq, 0.15) &&
                    within(cov, gam.ell, 0.25) &&
                    std::abs(mt.skewness) <= 0.15 &&
                    std::abs(mt.excess_kurtosis) <= 0.3;
    report(ok,
           "2 clt: var_theta=%.4f (%.4g+-15%%), var_rho=%.4f (%.4g+-15%%), "
           "cov=%.4f (%.4g+-25%%), skew=%.3f (|.|<=0.15), exkurt=%.3f "
           "(|.|<=0.3)",
           mt.variance, gam.sigma_theta_sq, mr.variance, gam.sigma_rho_sq,
           cov, gam.ell, mt.skewness, mt.excess_kurtosis);
  }

  // 3: null limit law of T rho_hat, plus 5: level and power of the test
  double level = 0.0;
  {
    WSamplerConfig wcfg;
    wcfg.method = WMethod::kKarhunenLoeve;
    wcfg.kl_terms = 200;
    wcfg.count = 100000;
    wcfg.seed = 9001;
    const NullDistributionResult nd =
        null_distribution_experiment(-1.0, 500.0, 0.01, 2000, 11, wcfg);
    report(nd.ks.p_value > 0.01,
           "3 null limit law: ks distance=%.5f, p=%.4f (> 0.01) on %zu "
           "replicates vs %zu draws",
           nd.ks.distance, nd.ks.p_value, nd.t_rho_hat.size(),
           nd.w_draws.size());
    std::size_t rej = 0;
    for (double w : nd.t_rho_hat)
      if (4.0 * w * w > kZ05) ++rej;
    level = static_cast<double>(rej) / static_cast<double>(nd.t_rho_hat.size());
  }

  // 4: the two W samplers agree, and the series mass is where it should be
  {
    WSamplerConfig kl;
    kl.method = WMethod::kKarhunenLoeve;
    kl.kl_terms = 200;
    kl.count = 100000;
    kl.seed = 101;
    WSamplerConfig bp;
    bp.method = WMethod::kBrownianPath;
    bp.path_steps = 2000;
    bp.count = 100000;
    bp.seed = 202;
    const KsResult ks = ks_two_sample(sample_w(kl), sample_w(bp));
    const double gap = 0.5 - kl_gamma_sq_partial_sum(200);
    const double bound = 1.0 / (kPi * kPi * 200.0);
    report(ks.distance < 0.01 && gap > 0.0 && gap < bound,
           "4 dual samplers: ks distance=%.5f (< 0.01); series gap=%.8e < "
           "%.8e",
           ks.distance, gap, bound);
  }

  // 5: calibration of the serial-correlation test
  {
    ExperimentSpec spec;
    spec.params = {-1.0, -1.0};
    spec.horizon = 500.0;
    spec.step = 0.01;
    spec.replications = 1000;
    spec.seed = 21;
    spec.alpha = 0.05;
    spec.z_alpha = kZ05;
    const double power = *replicate(spec).rejection_rate;
    const std::vector<double> sdw = scale_errors(a.dw, lim.d_star, a.t_eff);
    const double var_dw = moments(sdw).variance;
    report(level >= 0.03 && level <= 0.07 && power >= 0.99 &&
               within(var_dw, gam.sigma_d_sq, 0.15),
           "5 test calibration: level=%.4f (in [0.03, 0.07]), power=%.3f "
           "(>= 0.99), var_dw=%.4f (%.4f+-15%%)",
           level, power, var_dw, gam.sigma_d_sq);
  }

  // 6: the bivariate estimator and its diagonal limit covariance
  {
    const MomentSummary m1 = moments(a.v1);
    const MomentSummary m2 = moments(a.v2);
    const double dev1 = (m1.mean - (-3.0)) / std::sqrt(m1.variance / n);
    const double dev2 = (m2.mean - (-2.0)) / std::sqrt(m2.variance / n);
    const std::vector<double> s1 = scale_errors(a.v1, -3.0, a.t_eff);
    const std::vector<double> s2 = scale_errors(a.v2, -2.0, a.t_eff);
    const MomentSummary sm1 = moments(s1);
    const MomentSummary sm2 = moments(s2);
    const double corr =
        covariance(s1, s2) / std::sqrt(sm1.variance * sm2.variance);
    const Eigen::Matrix2d delta = delta_matrix({-2.0, -1.0});
    report(std::abs(dev1) < 3.0 && std::abs(dev2) < 3.0 &&
               within(sm1.variance, delta(0, 0), 0.15) &&
               within(sm2.variance, delta(1, 1), 0.15) &&
               std::abs(corr) < 0.1,
           "6 bivariate: means (%.4f, %.4f) (dev %.2f, %.2f se), vars "
           "(%.3f, %.3f) vs diag(%g, %g)+-15%%, corr=%.3f (|.| < 0.1)",
           m1.mean, m2.mean, dev1, dev2, sm1.variance, sm2.variance,
           delta(0, 0), delta(1, 1), corr);
  }

  // 7: the discretization is exact
  {
    const ModelParams grid[] = {{-2.0, -1.0},  {-1.0, -1.0},
                                {-0.5, 0.0},   {-3.0, -0.25},
                                {-0.1, -2.5},  {-1.7, -1.7 + 5e-9}};
    double err_m = 0.0, err_q = 0.0, err_semi = 0.0, err_flow = 0.0;
    for (const ModelParams& p : grid) {
      const Eigen::Matrix2d drift = drift_matrix(p);
      for (double h : {0.1, 1.0}) {
        err_m = std::max(err_m, (transition_matrix(p, h) -
                                 (drift * h).exp().eval())
                                    .cwiseAbs()
                                    .maxCoeff());
        err_q = std::max(err_q, (transition_covariance(p, h) -
                                 quadrature_cov(p, h))
                                    .cwiseAbs()
                                    .maxCoeff());
      }
      const Eigen::Matrix2d m1 = transition_matrix(p, 0.3);
      const Eigen::Matrix2d m2 = transition_matrix(p, 0.7);
      err_semi = std::max(
          err_semi,
          (transition_matrix(p, 1.0) - m2 * m1).cwiseAbs().maxCoeff());
      const Eigen::Matrix2d flow = m2 * transition_covariance(p, 0.3) *
                                       m2.transpose() +
                                   transition_covariance(p, 0.7);
      err_flow = std::max(err_flow, (transition_covariance(p, 1.0) - flow)
                                        .cwiseAbs()
                                        .maxCoeff());
    }

    const LaplaceCheck lp = laplace_check(2.0, 100000, 1000, 31);
    const double lp_dev = (lp.mc_estimate - lp.closed_form) / lp.std_error;

    const KsResult hks =
        ks_two_sample(terminal_sample(0.05, 601), terminal_sample(0.025, 602));
    report(err_m < 1e-12 && err_q < 1e-10 && err_semi < 1e-12 &&
               err_flow < 1e-12 && std::abs(lp_dev) < 3.0 &&
               hks.p_value > 0.01,
           "7 exactness: |M-expm|=%.2e, |Q-quad|=%.2e, semigroup=%.2e, "
           "flow=%.2e, laplace dev=%.2f se, h-invariance p=%.3f",
           err_m, err_q, err_semi, err_flow, lp_dev, hks.p_value);
  }

  // 8: algebraic identities, the moment solve, companion eigenvalues
  {
    const auto numeric = stationary_moment_targets_numeric({-2.0, -1.0});
    const double err_mom = std::max(
        {std::abs(numeric[0] - 1.0 / 6.0), std::abs(numeric[1] - 1.0 / 12.0),
         std::abs(numeric[2])});

    double err_eig = 0.0;
    const ModelParams eig_grid[] = {
        {-2.0, -1.0}, {-0.5, 0.0}, {-3.0, -0.25}, {-0.1, -2.5}};
    for (const ModelParams& p : eig_grid) {
      const Eigen::EigenSolver<Eigen::Matrix2d> es(companion_matrix(p));
      double lo = es.eigenvalues()(0).real(), hi = es.eigenvalues()(1).real();
      if (lo > hi) std::swap(lo, hi);
      const double im = std::max(std::abs(es.eigenvalues()(0).imag()),
                                 std::abs(es.eigenvalues()(1).imag()));
      err_eig = std::max({err_eig, im,
                          std::abs(lo - std::min(p.theta, p.rho)),
                          std::abs(hi - std::max(p.theta, p.rho))});
    }
    report(a.identities && err_mom < 1e-10 && err_eig < 1e-12,
           "8 identities: dw/z bit-exact on %zu replicates=%s, moment solve "
           "err=%.2e (< 1e-10), eigenvalue err=%.2e (< 1e-12)",
           a.completed, a.identities ? "yes" : "no", err_mom, err_eig);
  }

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
