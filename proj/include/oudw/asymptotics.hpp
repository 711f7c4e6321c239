#pragma once

#include <Eigen/Dense>

#include "oudw/model.hpp"

namespace oudw {

/// Almost-sure limits of the estimators. theta_hat converges to theta + rho
/// (not theta: the serially correlated noise biases the fit), rho_hat to a
/// rational function of both rates, and the Durbin-Watson statistic to
/// 2 (1 - rho_star).
struct Limits {
  double theta_star;
  double rho_star;
  double d_star;
};

Limits limits(const ModelParams& p);

/// Joint CLT covariance of sqrt(T) (theta_hat - theta_star,
/// rho_hat - rho_star); requires rho < 0 (throws std::domain_error at
/// rho = 0, where the rho_hat fluctuation is of order 1/T, not 1/sqrt(T)).
struct GammaCovariance {
  double sigma_theta_sq;  ///< Var limit of the theta component, -2 theta_star
  double ell;             ///< asymptotic covariance
  double sigma_rho_sq;    ///< Var limit of the rho component
  double sigma_d_sq;      ///< 4 sigma_rho_sq, the Durbin-Watson variance
};

GammaCovariance covariance_gamma(const ModelParams& p);

Eigen::Matrix2d gamma_matrix(const ModelParams& p);

/// CLT covariance of the joint drift estimator of the second-order form:
/// diag(-2 (theta + rho), -2 theta rho (theta + rho)); requires rho < 0.
Eigen::Matrix2d delta_matrix(const ModelParams& p);

/// Almost-sure limit of L_hat_T / T, the residual energy rate.
double residual_energy_limit(const ModelParams& p);

}  // namespace oudw
