#include "oudw/dw_test.hpp"

#include <cmath>

namespace oudw {

double z_statistic(double horizon, double dw) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("horizon must be positive");
  const double c = dw - 2.0;
  return horizon * horizon * c * c;
}

TestOutcome run_test(const SamplePath& path, double alpha, double z_alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(z_alpha >= 0.0) || !std::isfinite(z_alpha))
    throw std::invalid_argument("z_alpha must be nonnegative and finite");

  TestOutcome out;
  out.alpha = alpha;
  out.z_alpha = z_alpha;
  out.estimates = estimate(path);
  // 4 T^2 rho_hat^2: same number as z_statistic(T, dw) but exact in the
  // rho_hat parametrization, which the identity tests pin bitwise.
  const double t = out.estimates.stats.horizon;
  const double r = out.estimates.rho_hat;
  out.z_stat = 4.0 * (t * t) * (r * r);
  out.reject = out.z_stat > z_alpha;
  return out;
}

}  // namespace oudw
