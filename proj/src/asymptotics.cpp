#include "oudw/asymptotics.hpp"

namespace oudw {

namespace {
void require_correlated(const ModelParams& p, const char* what) {
  if (p.rho == 0.0)
    throw std::domain_error(std::string(what) +
                            " is defined only for rho < 0");
}
}  // namespace

Limits limits(const ModelParams& p) {
  validate(p);
  Limits l;
  l.theta_star = p.theta + p.rho;
  const double ts = l.theta_star;
  l.rho_star = p.theta * p.rho * ts / (ts * ts + p.theta * p.rho);
  l.d_star = 2.0 * (1.0 - l.rho_star);
  return l;
}

GammaCovariance covariance_gamma(const ModelParams& p) {
  validate(p);
  require_correlated(p, "covariance_gamma");
  const Limits l = limits(p);
  const double ts = l.theta_star;
  const double tr = p.theta * p.rho;
  const double ts2 = ts * ts;
  const double denom = ts2 + tr;

  GammaCovariance g;
  g.sigma_theta_sq = -2.0 * ts;
  g.ell = 2.0 * l.rho_star * (ts2 - tr) / denom;
  const double ts4 = ts2 * ts2;
  const double ts6 = ts4 * ts2;
  g.sigma_rho_sq = -2.0 * l.rho_star *
                   (ts6 + tr * (ts4 - tr * (2.0 * ts2 - tr))) /
                   (denom * denom * denom);
  g.sigma_d_sq = 4.0 * g.sigma_rho_sq;
  return g;
}

Eigen::Matrix2d gamma_matrix(const ModelParams& p) {
  const GammaCovariance g = covariance_gamma(p);
  Eigen::Matrix2d m;
  m << g.sigma_theta_sq, g.ell, g.ell, g.sigma_rho_sq;
  return m;
}

Eigen::Matrix2d delta_matrix(const ModelParams& p) {
  validate(p);
  require_correlated(p, "delta_matrix");
  const double ts = p.theta + p.rho;
  Eigen::Matrix2d m;
  m << -2.0 * ts, 0.0, 0.0, -2.0 * p.theta * p.rho * ts;
  return m;
}

double residual_energy_limit(const ModelParams& p) {
  validate(p);
  require_correlated(p, "residual_energy_limit");
  const double ts = p.theta + p.rho;
  return -(ts * ts + p.theta * p.rho) / (2.0 * p.theta * p.rho * ts);
}

}  // namespace oudw
