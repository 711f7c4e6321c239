#pragma once

#include <cstdint>
#include <vector>

#include "oudw/rng.hpp"

namespace oudw {

/// The limiting variable W = (B_1^2 - 1) / (2 int_0^1 B_s^2 ds) of the
/// unit-root-type statistics (B a standard Brownian motion). Two independent
/// sampling routes are provided so each can serve as the other's oracle.
enum class WMethod { kKarhunenLoeve, kBrownianPath };

struct WSamplerConfig {
  WMethod method = WMethod::kKarhunenLoeve;
  int kl_terms = 200;     ///< series truncation for the Karhunen-Loeve route
  int path_steps = 2000;  ///< grid size for the Brownian-path route
  std::size_t count = 0;
  std::uint64_t seed = 0;
};

/// Karhunen-Loeve coefficient gamma_n = 2 (-1)^n / ((2n - 1) pi), n >= 1.
double kl_gamma(int n);

/// Partial sum of gamma_n^2 up to N; converges to 1/2 with tail below
/// 1 / (pi^2 N).
double kl_gamma_sq_partial_sum(int terms);

/// One Karhunen-Loeve draw of the pair (T, S) with
/// T = sqrt(2) sum gamma_n Z_n and S = sum gamma_n^2 Z_n^2 over one shared
/// normal sequence; W = (T^2 - 1) / (2 S).
struct KlPair {
  double t;
  double s;
};

KlPair kl_draw(GaussianStream& g, int terms);

std::vector<double> sample_w(const WSamplerConfig& cfg);

struct QuantileEstimate {
  double z_alpha;
  double ci_low;   ///< 99% order-statistic confidence band
  double ci_high;
};

/// Sorted Monte Carlo sample of 4 W^2 (the null law of the test statistic),
/// drawn once and reused across quantile levels.
class WQuantileTable {
 public:
  explicit WQuantileTable(const WSamplerConfig& cfg);

  QuantileEstimate quantile(double alpha) const;
  const WSamplerConfig& config() const { return cfg_; }
  std::size_t draws() const { return sorted_.size(); }

 private:
  WSamplerConfig cfg_;
  std::vector<double> sorted_;
};

QuantileEstimate quantile_4w2(double alpha, const WSamplerConfig& cfg);

}  // namespace oudw
