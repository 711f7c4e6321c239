#include "oudw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oudw {

namespace {

// Asymptotic p-value with the small-sample correction of the effective size.
double ks_p_value(double d, double n_eff) {
  const double sq = std::sqrt(n_eff);
  return kolmogorov_tail((sq + 0.12 + 0.11 / sq) * d);
}

}  // namespace

MomentSummary moments(const std::vector<double>& a) {
  MomentSummary m;
  m.n = a.size();
  if (a.empty()) return m;
  double s = 0.0;
  for (double x : a) s += x;
  m.mean = s / static_cast<double>(a.size());
  if (a.size() < 2) return m;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : a) {
    const double d = x - m.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(a.size());
  m.variance = m2 / (n - 1.0);
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 > 0.0) {
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return m;
}

double covariance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("covariance needs two equal samples, n >= 2");
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  const double n = static_cast<double>(a.size());
  ma /= n;
  mb /= n;
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    acc += (a[i] - ma) * (b[i] - mb);
  return acc / (n - 1.0);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 128; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-16 * std::abs(sum)) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  KsResult r;
  r.distance = d;
  r.p_value = ks_p_value(d, na * nb / (na + nb));
  return r;
}

KsResult ks_normal(std::vector<double> a, double mean, double sd) {
  if (a.empty()) throw std::invalid_argument("ks_normal needs a sample");
  if (!(sd > 0.0)) throw std::invalid_argument("ks_normal needs sd > 0");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = normal_cdf((a[i] - mean) / sd);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  KsResult r;
  r.distance = d;
  r.p_value = ks_p_value(d, n);
  return r;
}

}  // namespace oudw
