#include "oudw/functionals.hpp"

namespace oudw {

double trapezoid(const std::vector<double>& f, double h) {
  if (f.size() < 2) return 0.0;
  double acc = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
  return acc * h;
}

std::vector<double> cumulative_sigma(const SamplePath& path) {
  validate(path);
  std::vector<double> sigma(path.points());
  sigma[0] = 0.0;
  for (std::size_t i = 1; i < path.points(); ++i)
    sigma[i] = sigma[i - 1] + 0.5 * path.step * (path.x[i - 1] + path.x[i]);
  return sigma;
}

SufficientStats sufficient_stats(const SamplePath& path, double theta_hat) {
  validate(path);
  const std::vector<double> sigma = cumulative_sigma(path);
  const double h = path.step;
  const std::size_t n = path.points();

  SufficientStats st;
  st.horizon = path.horizon;
  st.x_t = path.x.back();
  st.sigma_t = sigma.back();
  st.v_hat_t = path.x.back() - theta_hat * sigma.back();

  // Trapezoid weights: endpoints count half.
  double sxx = 0.0, sxs = 0.0, sss = 0.0, ssig = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const double x = path.x[i];
    const double s = sigma[i];
    const double vh = x - theta_hat * s;
    sxx += w * x * x;
    sxs += w * x * s;
    sss += w * s * s;
    ssig += w * s;
    svv += w * vh * vh;
  }
  st.s_t = h * sxx;
  st.pi_t = h * ssig;
  st.l_hat_t = h * svv;
  st.gram << st.s_t, h * sxs, h * sxs, h * sss;
  st.rhs << 0.5 * (st.x_t * st.x_t - st.horizon),
      st.sigma_t * st.x_t - st.s_t;
  return st;
}

}  // namespace oudw
