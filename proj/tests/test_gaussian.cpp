#include <doctest.h>

#include <stdexcept>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "cpd/gaussian.hpp"
#include "cpd/rng.hpp"

using namespace cpd;

namespace {

Series random_series(Xoshiro256pp& rng, std::size_t n, double mu, double sigma) {
  NormalSampler normal(rng.next(), rng.next());
  std::vector<double> xs(n);
  for (double& x : xs) x = mu + sigma * normal();
  return Series(std::move(xs), sigma);
}

// brute-force log likelihood at split k, means profiled, scale sigma
double direct_log_likelihood(const Series& s, std::size_t k, double sigma) {
  const auto xs = s.values();
  const std::size_t n = xs.size();
  const auto segment = [&](std::size_t a, std::size_t b) {
    double mean = 0.0;
    for (std::size_t i = a; i < b; ++i) mean += xs[i];
    mean /= static_cast<double>(b - a);
    double ll = 0.0;
    for (std::size_t i = a; i < b; ++i) {
      const double z = (xs[i] - mean) / sigma;
      ll += -0.5 * z * z - std::log(sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
    }
    return ll;
  };
  if (k == 0) return segment(0, n);
  return segment(0, k) + segment(k, n);
}

}  // namespace

TEST_CASE("delta_hat worked examples") {
  CHECK(delta_hat(Series({0, 0, 2, 2}, 1.0), 2) == doctest::Approx(2.0).epsilon(1e-14));
  // constant series: zero shift at any split (explicit scale, the plug-in is degenerate)
  for (std::size_t k = 1; k <= 3; ++k) {
    CHECK(delta_hat(Series({5, 5, 5, 5}), k, 1.0) == 0.0);
  }
  CHECK(delta_hat(Series({0.3, -0.1, 1.9, 2.2, 2.0}, 1.0), 2) ==
        doctest::Approx(1.9333333333333333).epsilon(1e-12));
}

TEST_CASE("delta_hat rejects out-of-range splits") {
  const Series s({0, 0, 2, 2}, 1.0);
  CHECK_THROWS_AS(delta_hat(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(delta_hat(s, 4), std::invalid_argument);
}

TEST_CASE("pooled sigma worked examples") {
  CHECK(pooled_sigma(Series({0, 1, 3, 4}), 2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pooled_sigma(Series({0, 1, 3, 4}), 0) ==
        doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
  CHECK_THROWS_WITH_AS(pooled_sigma(Series({0, 0, 2, 2}), 2), "degenerate scale",
                       std::runtime_error);
  CHECK_THROWS_AS(pooled_sigma(Series({0, 1, 3, 4}), 4), std::invalid_argument);
}

TEST_CASE("sigma resolution: known value, plug-in at argmax, global") {
  const Series known({0, 1, 3, 4}, 2.5);
  CHECK(resolve_sigma(known) == 2.5);

  const Series plug({0, 1, 3, 4});
  CHECK(resolve_sigma(plug) == doctest::Approx(0.5).epsilon(1e-14));  // split 2
  CHECK(resolve_sigma(plug, SigmaPolicy::global) ==
        doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
}

TEST_CASE("profile worked example and the direct-evaluation oracle") {
  const Series s({0, 0, 2, 2}, 1.0);
  const LogScoreProfile profile = log_likelihood_profile(s, 1.0);
  // (n/2)(k/n)(1-k/n) delta^2 at k=2: 2 * (1/2) * (1/2) * 4
  CHECK(profile[2] - profile[0] == doctest::Approx(2.0).epsilon(1e-12));
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(profile[k] ==
          doctest::Approx(direct_log_likelihood(s, k, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("constant series scores are flat") {
  const LogScoreProfile profile =
      log_likelihood_profile(Series({3.25, 3.25, 3.25, 3.25, 3.25}, 1.0), 1.0);
  for (std::size_t k = 1; k < profile.size(); ++k) CHECK(profile[k] == profile[0]);
}

TEST_CASE("zero working scale is rejected") {
  CHECK_THROWS_WITH_AS(log_likelihood_profile(Series({0, 1, 2, 3}), 0.0),
                       "degenerate scale", std::runtime_error);
}

TEST_CASE("likelihood ratio identity over random series") {
  Xoshiro256pp rng(20250801, 21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 298);
    const double sigma = std::exp(2.0 * (rng.uniform01() - 0.5));
    const double mu = 50.0 * (rng.uniform01() - 0.5);
    const Series s = random_series(rng, n, mu, sigma);
    const LogScoreProfile profile = log_likelihood_profile(s, sigma);
    const double nd = static_cast<double>(n);
    for (std::size_t k = 1; k < n; ++k) {
      const double dk = delta_hat(s, k, sigma);
      const double t = static_cast<double>(k) / nd;
      const double expected = 0.5 * nd * t * (1.0 - t) * dk * dk;
      const double got = profile[k] - profile[0];
      CHECK(std::abs(got - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("argmax of the profile, ties to the smallest index") {
  CHECK(mle_change_point(LogScoreProfile({0, 4, 1, 1}, ScoreKind::cusum)) == 1);
  CHECK(mle_change_point(LogScoreProfile({0, 3, 3}, ScoreKind::cusum)) == 1);
  CHECK(mle_change_point(LogScoreProfile({2, 2, 2}, ScoreKind::cusum)) == 0);

  const LogScoreProfile profile =
      log_likelihood_profile(Series({0, 0, 2, 2}, 1.0), 1.0);
  CHECK(mle_change_point(profile) == 2);
  CHECK(interior_argmax(profile) == 2);
}

TEST_CASE("strict false alarm on i.i.d. draws") {
  Xoshiro256pp rng(20250801, 22);
  for (int trial = 0; trial < 2000; ++trial) {
    const Series s = random_series(rng, 30, 0.0, 1.0);
    const LogScoreProfile profile = log_likelihood_profile(s, 1.0);
    const std::size_t best = interior_argmax(profile);
    CHECK(profile[best] > profile[0]);
    CHECK(mle_change_point(profile) != 0);
  }
}

TEST_CASE("ratio terms are shift invariant and reverse with the series") {
  Xoshiro256pp rng(20250801, 23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + static_cast<std::size_t>(rng.uniform01() * 60);
    const Series s = random_series(rng, n, 0.0, 1.0);
    const LogScoreProfile base = log_likelihood_profile(s, 1.0);

    std::vector<double> shifted(s.values().begin(), s.values().end());
    for (double& x : shifted) x += 7.25;
    const LogScoreProfile moved =
        log_likelihood_profile(Series(std::move(shifted), 1.0), 1.0);

    std::vector<double> backwards(s.values().rbegin(), s.values().rend());
    const LogScoreProfile reversed =
        log_likelihood_profile(Series(std::move(backwards), 1.0), 1.0);

    for (std::size_t k = 1; k < n; ++k) {
      const double term = base[k] - base[0];
      CHECK(std::abs((moved[k] - moved[0]) - term) < 1e-9);
      CHECK(std::abs((reversed[n - k] - reversed[0]) - term) < 1e-9);
    }
  }
}

TEST_CASE("profile construction stays linear-time at n = 1e6") {
  NormalSampler normal(99, 0);
  std::vector<double> xs(1000000);
  for (double& x : xs) x = normal();
  const Series s(std::move(xs), 1.0);
  const auto start = std::chrono::steady_clock::now();
  const LogScoreProfile profile = log_likelihood_profile(s, 1.0);
  const auto elapsed = std::chrono::duration<double, std::milli>(
      std::chrono::steady_clock::now() - start);
  CHECK(profile.size() == 1000000);
  // ~10 ms here; generous bound only as a regression tripwire
  CHECK(elapsed.count() < 2000.0);
  std::fprintf(stderr, "[info] n=1e6 likelihood profile: %.1f ms\n", elapsed.count());
}
