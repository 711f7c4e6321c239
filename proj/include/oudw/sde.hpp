#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "oudw/model.hpp"

namespace oudw {

/// Drift matrix A of the joint diffusion d(X, V)' = A (X, V)' dt + b dW with
/// b = (1, 1)'.
Eigen::Matrix2d drift_matrix(const ModelParams& p);

/// Companion matrix of the second-order form of the system; its eigenvalues
/// are exactly {theta, rho}.
Eigen::Matrix2d companion_matrix(const ModelParams& p);

/// exp(A h) in closed form (the confluent theta == rho case included).
Eigen::Matrix2d transition_matrix(const ModelParams& p, double h);

/// Q(h) = int_0^h exp(A s) b b' exp(A' s) ds in closed form.
Eigen::Matrix2d transition_covariance(const ModelParams& p, double h);

/// One-step Gaussian transition law on a fixed grid spacing: the state
/// propagates as z' = propagator * z + noise_chol * (g1, g2)' with g iid
/// standard normal.
struct TransitionLaw {
  Eigen::Matrix2d propagator;
  Eigen::Matrix2d noise_cov;
  Eigen::Matrix2d noise_chol;
};

TransitionLaw make_transition_law(const ModelParams& p, double step);

/// Number of grid intervals for (horizon, step); throws std::invalid_argument
/// unless horizon is a whole number of steps to relative 1e-9.
std::size_t grid_intervals(double horizon, double step);

/// Exact-in-distribution simulation of (X, V) from the origin. Deterministic
/// in (params, horizon, step, seed).
SamplePath simulate_exact(const ModelParams& p, double horizon, double step,
                          std::uint64_t seed);

/// Euler-Maruyama reference scheme sharing one Brownian increment per step
/// between the two coordinates. Same interface and determinism contract.
SamplePath simulate_euler(const ModelParams& p, double horizon, double step,
                          std::uint64_t seed);

/// Stationary second moments where they exist. var_v and cov_xv are absent in
/// the rho = 0 regime (V is then a Brownian motion, which has no stationary
/// law).
struct StationaryMoments {
  double var_x;
  std::optional<double> var_v;
  std::optional<double> cov_xv;
};

StationaryMoments stationary_moments(const ModelParams& p);

/// Monte Carlo check of E[exp(-u int_0^1 B_s^2 ds)] against the closed form
/// cosh(sqrt(2u))^{-1/2}; exercises the Brownian bridge of the simulator and
/// the quadrature path used by the samplers.
struct LaplaceCheck {
  double mc_estimate;
  double closed_form;
  double std_error;
};

LaplaceCheck laplace_check(double u, std::size_t paths, std::size_t steps,
                           std::uint64_t seed);

}  // namespace oudw
