#include "oudw/sde.hpp"

#include <cmath>

#include "oudw/rng.hpp"

namespace oudw {

namespace {

constexpr double kConfluentTol = 1e-8;

// int_0^h exp(a s) ds, stable for a -> 0 via expm1.
double exp_integral(double a, double h) {
  if (a == 0.0) return h;
  return std::expm1(a * h) / a;
}

// Lower Cholesky factor of a 2x2 covariance, clamping tiny negative pivots
// (Q(0) is the zero matrix).
Eigen::Matrix2d chol2(const Eigen::Matrix2d& q) {
  Eigen::Matrix2d l = Eigen::Matrix2d::Zero();
  l(0, 0) = std::sqrt(std::max(q(0, 0), 0.0));
  l(1, 0) = l(0, 0) > 0.0 ? q(1, 0) / l(0, 0) : 0.0;
  l(1, 1) = std::sqrt(std::max(q(1, 1) - l(1, 0) * l(1, 0), 0.0));
  return l;
}

void check_step_h(double h) {
  if (!(h >= 0.0) || !std::isfinite(h))
    throw std::invalid_argument("h must be nonnegative and finite");
}

}  // namespace

Eigen::Matrix2d drift_matrix(const ModelParams& p) {
  validate(p);
  Eigen::Matrix2d a;
  a << p.theta, p.rho, 0.0, p.rho;
  return a;
}

Eigen::Matrix2d companion_matrix(const ModelParams& p) {
  validate(p);
  Eigen::Matrix2d c;
  c << p.theta + p.rho, -p.theta * p.rho, 1.0, 0.0;
  return c;
}

Eigen::Matrix2d transition_matrix(const ModelParams& p, double h) {
  validate(p);
  check_step_h(h);
  const double et = std::exp(p.theta * h);
  const double er = std::exp(p.rho * h);
  // Upper-right entry rho (e^{rho h} - e^{theta h}) / (rho - theta),
  // rewritten as rho e^{theta h} expm1(d h) / d so the confluent limit
  // rho h e^{rho h} is reached without cancellation.
  const double d = p.rho - p.theta;
  const double dh = d * h;
  double upper;
  if (dh == 0.0) {
    upper = p.rho * h * er;
  } else if (std::abs(dh) < 1.0) {
    upper = p.rho * et * std::expm1(dh) / d;
  } else {
    upper = p.rho * (er - et) / d;
  }
  Eigen::Matrix2d m;
  m << et, upper, 0.0, er;
  return m;
}

Eigen::Matrix2d transition_covariance(const ModelParams& p, double h) {
  validate(p);
  check_step_h(h);
  Eigen::Matrix2d q;
  if (std::abs(p.theta - p.rho) < kConfluentTol) {
    // Confluent limit: the first integrand row collapses to e^{ms}(1 + m s)
    // at the midpoint rate m, accurate to O((theta - rho)^2) by symmetry;
    // the second row keeps the exact rho.
    const double m = 0.5 * (p.theta + p.rho);
    const double a = p.rho + m;
    const double b = 2.0 * m;
    const double ea = std::exp(a * h);
    const double eb = std::exp(b * h);
    const double i0a = exp_integral(a, h);
    const double i0b = exp_integral(b, h);
    const double i1a = (h * ea - i0a) / a;
    const double i1b = (h * eb - i0b) / b;
    const double i2b = (h * h * eb - 2.0 * i1b) / b;
    q(1, 1) = exp_integral(2.0 * p.rho, h);
    q(0, 1) = i0a + m * i1a;
    q(0, 0) = i0b + 2.0 * m * i1b + m * m * i2b;
  } else {
    const double d = p.rho - p.theta;
    const double i2r = exp_integral(2.0 * p.rho, h);
    const double itr = exp_integral(p.theta + p.rho, h);
    const double i2t = exp_integral(2.0 * p.theta, h);
    q(1, 1) = i2r;
    q(0, 1) = (p.rho * i2r - p.theta * itr) / d;
    q(0, 0) = (p.rho * p.rho * i2r - 2.0 * p.theta * p.rho * itr +
               p.theta * p.theta * i2t) /
              (d * d);
  }
  q(1, 0) = q(0, 1);
  return q;
}

TransitionLaw make_transition_law(const ModelParams& p, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("step must be positive and finite");
  TransitionLaw law;
  law.propagator = transition_matrix(p, step);
  law.noise_cov = transition_covariance(p, step);
  law.noise_chol = chol2(law.noise_cov);
  return law;
}

std::size_t grid_intervals(double horizon, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("step must be positive and finite");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("horizon must be positive and finite");
  const double ratio = horizon / step;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(n * step - horizon) >
                     1e-9 * std::max(1.0, std::abs(horizon)))
    throw std::invalid_argument(
        "horizon must be a whole number of steps (relative 1e-9)");
  return static_cast<std::size_t>(n);
}

SamplePath simulate_exact(const ModelParams& p, double horizon, double step,
                          std::uint64_t seed) {
  validate(p);
  const std::size_t n = grid_intervals(horizon, step);
  const TransitionLaw law = make_transition_law(p, step);
  const Eigen::Matrix2d& m = law.propagator;
  const Eigen::Matrix2d& l = law.noise_chol;

  SamplePath path;
  path.step = step;
  path.horizon = static_cast<double>(n) * step;
  path.x.resize(n + 1);
  path.v.resize(n + 1);
  path.x[0] = 0.0;
  path.v[0] = 0.0;

  GaussianStream g(seed);
  double x = 0.0, v = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    auto [g1, g2] = g.next_pair();
    const double nx = m(0, 0) * x + m(0, 1) * v + l(0, 0) * g1;
    const double nv = m(1, 1) * v + l(1, 0) * g1 + l(1, 1) * g2;
    x = nx;
    v = nv;
    path.x[i] = x;
    path.v[i] = v;
  }
  return path;
}

SamplePath simulate_euler(const ModelParams& p, double horizon, double step,
                          std::uint64_t seed) {
  validate(p);
  const std::size_t n = grid_intervals(horizon, step);
  SamplePath path;
  path.step = step;
  path.horizon = static_cast<double>(n) * step;
  path.x.resize(n + 1);
  path.v.resize(n + 1);
  path.x[0] = 0.0;
  path.v[0] = 0.0;

  GaussianStream g(seed);
  const double sqh = std::sqrt(step);
  double x = 0.0, v = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    // dX = theta X dt + dV and dV = rho V dt + dW share the same increment.
    const double dw = sqh * g.next();
    const double dv = p.rho * v * step + dw;
    x += p.theta * x * step + dv;
    v += dv;
    path.x[i] = x;
    path.v[i] = v;
  }
  return path;
}

StationaryMoments stationary_moments(const ModelParams& p) {
  validate(p);
  StationaryMoments m;
  m.var_x = -0.5 / (p.theta + p.rho);
  if (p.rho < 0.0) {
    m.var_v = -0.5 / p.rho;
    m.cov_xv = m.var_x;
  }
  return m;
}

LaplaceCheck laplace_check(double u, std::size_t paths, std::size_t steps,
                           std::uint64_t seed) {
  if (u < 0.0 || !std::isfinite(u))
    throw std::invalid_argument("u must be nonnegative and finite");
  if (paths == 0 || steps == 0)
    throw std::invalid_argument("paths and steps must be positive");

  const double h = 1.0 / static_cast<double>(steps);
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t r = 0; r < paths; ++r) {
    GaussianStream g(derive_stream(seed, r));
    const double sqh = std::sqrt(h);
    double b = 0.0, integral = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
      const double nb = b + sqh * g.next();
      integral += 0.5 * h * (b * b + nb * nb);
      b = nb;
    }
    const double val = std::exp(-u * integral);
    sum += val;
    sumsq += val * val;
  }
  const double n = static_cast<double>(paths);
  const double mean = sum / n;
  const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
  LaplaceCheck out;
  out.mc_estimate = mean;
  out.closed_form = 1.0 / std::sqrt(std::cosh(std::sqrt(2.0 * u)));
  out.std_error = paths > 1 ? std::sqrt(var / n) : 0.0;
  return out;
}

}  // namespace oudw
