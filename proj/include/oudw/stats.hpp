#pragma once

#include <vector>

namespace oudw {

struct MomentSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased (n - 1 denominator)
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

MomentSummary moments(const std::vector<double>& a);

double covariance(const std::vector<double>& a, const std::vector<double>& b);

double normal_cdf(double x);

/// Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_tail(double lambda);

struct KsResult {
  double distance = 0.0;
  double p_value = 0.0;
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// One-sample KS against N(mean, sd^2).
KsResult ks_normal(std::vector<double> a, double mean, double sd);

}  // namespace oudw
