#pragma once

#include <Eigen/Dense>

#include "oudw/functionals.hpp"
#include "oudw/model.hpp"

namespace oudw {

/// Shared estimator kernel (y_T^2 - T) / (2 int_0^T y^2 dt): the drift-rate
/// MLE of an ergodic scalar diffusion with unit noise. Both theta_hat (with
/// y = X) and rho_hat (with y = the residual V_hat) are this map.
double mle_drift_rate(double terminal, double horizon, double energy);

double estimate_theta(const SamplePath& path);

double durbin_watson(double rho_hat);

struct EstimationResult {
  double theta_hat = 0.0;
  double rho_hat = 0.0;
  double dw = 0.0;  ///< always 2 * (1 - rho_hat)
  SufficientStats stats;
};

/// Full first-stage/second-stage estimation from the X coordinate alone:
/// theta_hat, then the residual path V_hat = X - theta_hat Sigma, then
/// rho_hat and the Durbin-Watson statistic.
EstimationResult estimate(const SamplePath& path);

/// (rho_hat, theta_hat) without the bookkeeping.
std::pair<double, double> estimate_rho(const SamplePath& path);

/// Joint least-squares drift vector of the second-order form
///   dX = a X dt + b Sigma dt + dW,  vartheta = (a, b) -> (theta + rho,
///   -theta rho): solves gram * vartheta = rhs.
Eigen::Vector2d estimate_vartheta(const SamplePath& path);

}  // namespace oudw
