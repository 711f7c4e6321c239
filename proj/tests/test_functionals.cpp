#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oudw/functionals.hpp"
#include "oudw/rng.hpp"
#include "oudw/sde.hpp"

using namespace oudw;

namespace {

SamplePath from_samples(std::vector<double> x, double step) {
  SamplePath p;
  p.step = step;
  p.horizon = step * static_cast<double>(x.size() - 1);
  p.v = std::vector<double>(x.size(), 0.0);
  p.x = std::move(x);
  return p;
}

SamplePath sine_path(double horizon, double step) {
  const auto n = static_cast<std::size_t>(std::llround(horizon / step));
  std::vector<double> x(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    x[i] = std::sin(static_cast<double>(i) * step);
  return from_samples(std::move(x), step);
}

}  // namespace

TEST_CASE("trapezoid rule") {
  CHECK(trapezoid({0.0, 1.0}, 1.0) == 0.5);
  CHECK(trapezoid({1.0, 1.0, 1.0}, 0.5) == 1.0);
  CHECK(trapezoid({0.0, 1.0, 0.0}, 1.0) == 1.0);
  CHECK(trapezoid({3.0}, 1.0) == 0.0);
}

TEST_CASE("running antiderivative") {
  SUBCASE("hand values") {
    const auto s1 = cumulative_sigma(from_samples({0.0, 1.0}, 1.0));
    CHECK(s1 == std::vector<double>{0.0, 0.5});
    const auto s2 = cumulative_sigma(from_samples({0.0, 1.0, 0.0}, 1.0));
    CHECK(s2 == std::vector<double>{0.0, 0.5, 1.0});
  }

  SUBCASE("second-order refinement on a smooth path") {
    const double exact = 1.0 - std::cos(2.0);
    const double e1 =
        std::abs(cumulative_sigma(sine_path(2.0, 0.01)).back() - exact);
    const double e2 =
        std::abs(cumulative_sigma(sine_path(2.0, 0.005)).back() - exact);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("sufficient statistics") {
  SUBCASE("flat path carries only the quadratic variation term") {
    const SufficientStats st =
        sufficient_stats(from_samples({0.0, 0.0, 0.0, 0.0}, 1.0), 0.0);
    CHECK(st.s_t == 0.0);
    CHECK(st.sigma_t == 0.0);
    CHECK(st.pi_t == 0.0);
    CHECK(st.l_hat_t == 0.0);
    CHECK(st.rhs(0) == -1.5);  // (X_T^2 - T)/2 with X_T = 0, T = 3
    CHECK(st.rhs(1) == 0.0);
    CHECK(st.gram.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("hand values on the two-point ramp") {
    const SufficientStats st = sufficient_stats(from_samples({0.0, 1.0}, 1.0),
                                                0.0);
    CHECK(st.horizon == 1.0);
    CHECK(st.x_t == 1.0);
    CHECK(st.s_t == 0.5);
    CHECK(st.sigma_t == 0.5);
    CHECK(st.pi_t == 0.25);
    CHECK(st.v_hat_t == 1.0);
    CHECK(st.l_hat_t == 0.5);
    CHECK(st.gram(0, 0) == 0.5);
    CHECK(st.gram(0, 1) == 0.25);
    CHECK(st.gram(1, 1) == 0.125);
    CHECK(st.rhs(0) == 0.0);
    CHECK(st.rhs(1) == 0.0);
  }

  SUBCASE("theta_hat shifts only the residual block") {
    const SamplePath path = from_samples({0.0, 1.0}, 1.0);
    const SufficientStats a = sufficient_stats(path, 0.0);
    const SufficientStats b = sufficient_stats(path, 2.0);
    CHECK(b.v_hat_t == 0.0);  // 1 - 2 * 0.5
    CHECK(b.l_hat_t == 0.0);
    CHECK(b.s_t == a.s_t);
    CHECK(b.gram == a.gram);
    CHECK(b.rhs == a.rhs);
  }

  SUBCASE("gram(0,0) is S_T and the gram is a Gramian") {
    for (std::uint64_t seed : {1, 2, 3, 4}) {
      const SamplePath path =
          simulate_exact({-2.0, -1.0}, 50.0, 0.01, derive_stream(40, seed));
      const SufficientStats st = sufficient_stats(path, 0.3);
      CHECK(st.gram(0, 0) == st.s_t);
      CHECK(st.gram(0, 1) == st.gram(1, 0));
      CHECK(st.gram(0, 1) * st.gram(0, 1) <=
            st.gram(0, 0) * st.gram(1, 1) * (1.0 + 1e-12));
      CHECK(st.l_hat_t >= 0.0);
    }
  }

  SUBCASE("ergodic energy rate") {
    // S_T / T converges to the stationary second moment 1/6 at (-2, -1).
    const SamplePath path = simulate_exact({-2.0, -1.0}, 2000.0, 0.01, 41);
    const SufficientStats st = sufficient_stats(path, 0.0);
    CHECK(st.s_t / st.horizon ==
          doctest::Approx(1.0 / 6.0).epsilon(0.05));
  }

  SUBCASE("integration by parts against the Ito sum") {
    // rhs(1) is the closed form Sigma_T X_T - S_T of int Sigma dX; the
    // forward Riemann-Ito sum differs from it by O(h).
    for (double h : {0.01, 0.002}) {
      const SamplePath path = simulate_exact({-2.0, -1.0}, 50.0, h, 45);
      const SufficientStats st = sufficient_stats(path, 0.0);
      const std::vector<double> sigma = cumulative_sigma(path);
      double ito = 0.0;
      for (std::size_t i = 0; i + 1 < path.points(); ++i)
        ito += sigma[i] * (path.x[i + 1] - path.x[i]);
      CHECK(std::abs(ito - st.rhs(1)) <
            h * (std::abs(st.rhs(0)) + std::sqrt(st.horizon) + 5.0));
    }
  }
}

TEST_CASE("path validation") {
  CHECK_THROWS_AS(cumulative_sigma(from_samples({0.0}, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cumulative_sigma(from_samples({1.0, 0.0}, 1.0)),
                  std::invalid_argument);
  SamplePath bad = from_samples({0.0, 1.0}, 1.0);
  bad.horizon = 7.0;
  CHECK_THROWS_AS(cumulative_sigma(bad), std::invalid_argument);
  bad = from_samples({0.0, 1.0}, 1.0);
  bad.v.pop_back();
  CHECK_THROWS_AS(cumulative_sigma(bad), std::invalid_argument);
}
