#include "oudw/estimators.hpp"

#include <cmath>

namespace oudw {

namespace {
constexpr double kEnergyFloor = 1e-300;
constexpr double kMaxGramCondition = 1e12;
}  // namespace

double mle_drift_rate(double terminal, double horizon, double energy) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("horizon must be positive");
  if (!(energy >= kEnergyFloor))
    throw DegeneratePathError(
        "path energy below 1e-300; drift rate undefined");
  return (terminal * terminal - horizon) / (2.0 * energy);
}

double estimate_theta(const SamplePath& path) {
  validate(path);
  std::vector<double> xsq(path.points());
  for (std::size_t i = 0; i < path.points(); ++i)
    xsq[i] = path.x[i] * path.x[i];
  const double s_t = trapezoid(xsq, path.step);
  return mle_drift_rate(path.x.back(), path.horizon, s_t);
}

double durbin_watson(double rho_hat) { return 2.0 * (1.0 - rho_hat); }

EstimationResult estimate(const SamplePath& path) {
  EstimationResult r;
  r.theta_hat = estimate_theta(path);
  r.stats = sufficient_stats(path, r.theta_hat);
  r.rho_hat = mle_drift_rate(r.stats.v_hat_t, r.stats.horizon, r.stats.l_hat_t);
  r.dw = durbin_watson(r.rho_hat);
  return r;
}

std::pair<double, double> estimate_rho(const SamplePath& path) {
  const EstimationResult r = estimate(path);
  return {r.rho_hat, r.theta_hat};
}

Eigen::Vector2d estimate_vartheta(const SamplePath& path) {
  // The Gram/rhs blocks do not involve theta_hat; 0 keeps the residual
  // fields inert.
  const SufficientStats st = sufficient_stats(path, 0.0);
  const Eigen::Matrix2d& g = st.gram;
  const double tr = g(0, 0) + g(1, 1);
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  const double lo = 0.5 * (tr - disc);
  const double hi = 0.5 * (tr + disc);
  if (!(lo > 0.0) || hi / lo > kMaxGramCondition)
    throw DegeneratePathError(
        "Gram matrix of (X, Sigma) is singular or ill-conditioned");
  Eigen::Vector2d sol;
  sol << (g(1, 1) * st.rhs(0) - g(0, 1) * st.rhs(1)) / det,
      (g(0, 0) * st.rhs(1) - g(1, 0) * st.rhs(0)) / det;
  return sol;
}

}  // namespace oudw
