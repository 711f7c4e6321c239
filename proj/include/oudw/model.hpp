#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace oudw {

inline constexpr const char* kSpecVersion = "1.0";

/// Raised when a path carries no usable signal (zero energy, singular Gram
/// matrix) and an estimator would divide by an ill-defined quantity.
class DegeneratePathError : public std::runtime_error {
 public:
  explicit DegeneratePathError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Drift rates of the coupled system
///   dX_t = theta X_t dt + dV_t,   dV_t = rho V_t dt + dW_t,
/// with a single driving Brownian motion W. Stability requires theta < 0;
/// rho = 0 is the uncorrelated-noise regime (V = W).
struct ModelParams {
  double theta;
  double rho;
};

/// Joint trajectory of (X, V) on a uniform time grid, started at the origin.
/// x and v hold n + 1 samples; the grid point i sits at t = i * step and
/// horizon == n * step.
struct SamplePath {
  double step = 0.0;
  double horizon = 0.0;
  std::vector<double> x;
  std::vector<double> v;

  std::size_t points() const { return x.size(); }
  std::size_t intervals() const { return x.empty() ? 0 : x.size() - 1; }
  double t(std::size_t i) const { return static_cast<double>(i) * step; }
};

inline void validate(const ModelParams& p) {
  if (!(std::isfinite(p.theta) && p.theta < 0.0))
    throw std::invalid_argument("theta must be finite and strictly negative");
  if (!(std::isfinite(p.rho) && p.rho <= 0.0))
    throw std::invalid_argument("rho must be finite and nonpositive");
}

inline void validate(const SamplePath& path) {
  if (path.x.size() != path.v.size())
    throw std::invalid_argument("path: x and v must have equal length");
  if (path.x.size() < 2)
    throw std::invalid_argument("path: need at least two grid points");
  if (!(path.step > 0.0) || !std::isfinite(path.step))
    throw std::invalid_argument("path: step must be positive and finite");
  if (path.x.front() != 0.0 || path.v.front() != 0.0)
    throw std::invalid_argument("path: trajectories must start at zero");
  const double n = static_cast<double>(path.intervals());
  if (std::abs(n * path.step - path.horizon) >
      1e-9 * std::max(1.0, std::abs(path.horizon)))
    throw std::invalid_argument("path: horizon does not match step * intervals");
}

}  // namespace oudw
