#pragma once

#include <Eigen/Dense>
#include <vector>

#include "oudw/model.hpp"

namespace oudw {

/// Trapezoid rule over a uniform grid with spacing h.
double trapezoid(const std::vector<double>& f, double h);

/// Running antiderivative Sigma_t = int_0^t X_s ds on the path grid
/// (trapezoid rule; same length as the path).
std::vector<double> cumulative_sigma(const SamplePath& path);

/// Every path integral the estimators consume, computed in one sweep.
/// Stochastic integrals enter through their pathwise closed forms:
///   int_0^T X dX   = (X_T^2 - T) / 2,
///   int_0^T Sigma dX = Sigma_T X_T - S_T,
/// so no Ito sums are accumulated. theta_hat only feeds the residual
/// quantities v_hat_t and l_hat_t.
struct SufficientStats {
  double horizon = 0.0;
  double s_t = 0.0;      ///< S_T = int X^2 dt
  double sigma_t = 0.0;  ///< Sigma_T = int X dt
  double pi_t = 0.0;     ///< Pi_T = int Sigma dt
  double x_t = 0.0;
  double v_hat_t = 0.0;  ///< residual terminal value X_T - theta_hat Sigma_T
  double l_hat_t = 0.0;  ///< int (X - theta_hat Sigma)^2 dt
  Eigen::Matrix2d gram;  ///< int Phi Phi' dt with Phi = (X, Sigma)'
  Eigen::Vector2d rhs;   ///< (int X dX, int Sigma dX)
};

SufficientStats sufficient_stats(const SamplePath& path, double theta_hat);

}  // namespace oudw
