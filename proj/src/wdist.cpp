#include "oudw/wdist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oudw/model.hpp"

namespace oudw {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDenominatorFloor = 1e-300;
// normal quantile for a two-sided 99% band
constexpr double kZ99 = 2.5758293035489004;

void check_config(const WSamplerConfig& cfg) {
  if (cfg.count == 0) throw std::invalid_argument("count must be positive");
  if (cfg.method == WMethod::kKarhunenLoeve && cfg.kl_terms < 1)
    throw std::invalid_argument("kl_terms must be positive");
  if (cfg.method == WMethod::kBrownianPath && cfg.path_steps < 1)
    throw std::invalid_argument("path_steps must be positive");
}

double path_draw(GaussianStream& g, int steps) {
  const double h = 1.0 / static_cast<double>(steps);
  const double sqh = std::sqrt(h);
  double b = 0.0, integral = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double nb = b + sqh * g.next();
    integral += 0.5 * h * (b * b + nb * nb);
    b = nb;
  }
  if (integral < kDenominatorFloor)
    throw DegeneratePathError("Brownian energy underflow in W sampler");
  return (b * b - 1.0) / (2.0 * integral);
}

}  // namespace

double kl_gamma(int n) {
  if (n < 1) throw std::invalid_argument("kl_gamma: n starts at 1");
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return 2.0 * sign / ((2.0 * n - 1.0) * kPi);
}

double kl_gamma_sq_partial_sum(int terms) {
  double acc = 0.0;
  for (int n = terms; n >= 1; --n) {
    const double g = kl_gamma(n);
    acc += g * g;
  }
  return acc;
}

KlPair kl_draw(GaussianStream& g, int terms) {
  double t = 0.0, s = 0.0;
  for (int n = 1; n <= terms; ++n) {
    const double z = g.next();
    const double gn = kl_gamma(n);
    t += gn * z;
    s += gn * gn * z * z;
  }
  return {std::sqrt(2.0) * t, s};
}

std::vector<double> sample_w(const WSamplerConfig& cfg) {
  check_config(cfg);
  std::vector<double> out(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) {
    GaussianStream g(derive_stream(cfg.seed, i));
    if (cfg.method == WMethod::kKarhunenLoeve) {
      const KlPair p = kl_draw(g, cfg.kl_terms);
      if (p.s < kDenominatorFloor)
        throw DegeneratePathError("series energy underflow in W sampler");
      out[i] = (p.t * p.t - 1.0) / (2.0 * p.s);
    } else {
      out[i] = path_draw(g, cfg.path_steps);
    }
  }
  return out;
}

WQuantileTable::WQuantileTable(const WSamplerConfig& cfg) : cfg_(cfg) {
  sorted_ = sample_w(cfg);
  for (double& w : sorted_) w = 4.0 * w * w;
  std::sort(sorted_.begin(), sorted_.end());
}

QuantileEstimate WQuantileTable::quantile(double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  const double n = static_cast<double>(sorted_.size());
  const double p = 1.0 - alpha;
  auto at_rank = [&](double rank) {
    const long k =
        std::clamp(static_cast<long>(std::ceil(rank)), 1L,
                   static_cast<long>(sorted_.size()));
    return sorted_[static_cast<std::size_t>(k - 1)];
  };
  const double half = kZ99 * std::sqrt(n * p * (1.0 - p));
  QuantileEstimate q;
  q.z_alpha = at_rank(p * n);
  q.ci_low = at_rank(p * n - half);
  q.ci_high = at_rank(p * n + half);
  return q;
}

QuantileEstimate quantile_4w2(double alpha, const WSamplerConfig& cfg) {
  return WQuantileTable(cfg).quantile(alpha);
}

}  // namespace oudw
