#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "cpd/alt_stats.hpp"
#include "cpd/gaussian.hpp"
#include "cpd/rng.hpp"
#include "cpd/walk.hpp"

using namespace cpd;

namespace {

// direct per-k evaluation of the self-normalized statistic, straight from
// its definition; the O(n^2) reference the fast recurrences are checked
// against
std::vector<double> self_normalized_reference(const Series& series) {
  const auto xs = series.values();
  const std::size_t n = xs.size();
  double grand = 0.0;
  for (double x : xs) grand += x;
  grand /= static_cast<double>(n);

  std::vector<double> scores(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    double s_k = 0.0;
    for (std::size_t i = 0; i < k; ++i) s_k += xs[i] - grand;

    double mean_left = 0.0;
    for (std::size_t i = 0; i < k; ++i) mean_left += xs[i];
    mean_left /= static_cast<double>(k);
    double mean_right = 0.0;
    for (std::size_t i = k; i < n; ++i) mean_right += xs[i];
    mean_right /= static_cast<double>(n - k);

    double v = 0.0;
    for (std::size_t t = 1; t <= k; ++t) {
      double inner = 0.0;
      for (std::size_t i = 0; i < t; ++i) inner += xs[i] - mean_left;
      v += inner * inner;
    }
    for (std::size_t t = k + 1; t <= n; ++t) {
      double inner = 0.0;
      for (std::size_t i = k; i < t; ++i) inner += xs[i] - mean_right;
      v += inner * inner;
    }
    if (v <= 0.0) {
      scores[k] = s_k != 0.0 ? k_degenerate_score_cap : 0.0;
    } else {
      scores[k] = std::min(s_k * s_k * static_cast<double>(n) / v,
                           k_degenerate_score_cap);
    }
  }
  return scores;
}

Series gaussian_series(std::uint64_t seed, std::size_t n,
                       double shift_after_half = 0.0) {
  NormalSampler normal(seed, 17);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = normal() + (i >= n / 2 ? shift_after_half : 0.0);
  }
  return Series(std::move(xs));
}

}  // namespace

TEST_CASE("cusum worked examples") {
  const LogScoreProfile h = cusum_profile(Series({0, 0, 2, 2}));
  CHECK(h.kind() == ScoreKind::cusum);
  CHECK(h[0] == 0.0);
  CHECK(h[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(h[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h[3] == doctest::Approx(0.5).epsilon(1e-15));

  const LogScoreProfile flat = cusum_profile(Series({4.5, 4.5, 4.5}));
  for (std::size_t k = 0; k < 3; ++k) CHECK(flat[k] == 0.0);
}

TEST_CASE("cusum centering removes constants exactly on dyadic data") {
  // values sum to 12, so the mean stays exact before and after the shift
  const Series base({1.0, 3.0, -2.0, 0.5, 7.0, 2.5});
  std::vector<double> moved(base.values().begin(), base.values().end());
  for (double& x : moved) x += 4.0;
  const LogScoreProfile a = cusum_profile(base);
  const LogScoreProfile b = cusum_profile(Series(std::move(moved)));
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
}

TEST_CASE("cusum scales with the data, self-normalized does not") {
  const Series base = gaussian_series(5, 60, 0.7);
  const LogScoreProfile h = cusum_profile(base);
  const LogScoreProfile g = self_normalized_profile(base);
  for (double c : {0.01, 100.0}) {
    std::vector<double> scaled(base.values().begin(), base.values().end());
    for (double& x : scaled) x *= c;
    const Series s(std::move(scaled));
    const LogScoreProfile hc = cusum_profile(s);
    const LogScoreProfile gc = self_normalized_profile(s);
    for (std::size_t k = 0; k < base.size(); ++k) {
      CHECK(hc[k] == doctest::Approx(c * h[k]).epsilon(1e-9));
      CHECK(gc[k] == doctest::Approx(g[k]).epsilon(1e-9));
    }
  }
}

TEST_CASE("both substitution profiles are shift invariant") {
  const Series base = gaussian_series(6, 80, 0.4);
  std::vector<double> moved(base.values().begin(), base.values().end());
  for (double& x : moved) x += 123.456;
  const Series s(std::move(moved));
  const LogScoreProfile h0 = cusum_profile(base);
  const LogScoreProfile h1 = cusum_profile(s);
  const LogScoreProfile g0 = self_normalized_profile(base);
  const LogScoreProfile g1 = self_normalized_profile(s);
  for (std::size_t k = 0; k < base.size(); ++k) {
    CHECK(h1[k] == doctest::Approx(h0[k]).epsilon(1e-12));
    CHECK(g1[k] == doctest::Approx(g0[k]).epsilon(1e-12));
  }
}

TEST_CASE("self-normalized worked example") {
  const LogScoreProfile g = self_normalized_profile(Series({0, 1, 3, 4}));
  CHECK(g.kind() == ScoreKind::self_normalized);
  CHECK(g[0] == 0.0);
  // S_2 = -3, V = 0.5: 9 / (0.5/4)
  CHECK(g[2] == doctest::Approx(72.0).epsilon(1e-12));
}

TEST_CASE("degenerate normalizer is capped, zero stays zero") {
  const LogScoreProfile g = self_normalized_profile(Series({0, 0, 2, 2}));
  CHECK(g[2] == k_degenerate_score_cap);  // V = 0 with S != 0

  const LogScoreProfile flat = self_normalized_profile(Series({5, 5, 5, 5}));
  for (std::size_t k = 0; k < 4; ++k) CHECK(flat[k] == 0.0);
}

TEST_CASE("self-normalized needs at least four observations") {
  CHECK_THROWS_AS(self_normalized_profile(Series({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("fast recurrences match the direct-definition oracle") {
  for (std::size_t n : {4u, 10u, 50u, 300u}) {
    for (std::uint64_t seed = 1; seed <= (n == 300 ? 5u : 30u); ++seed) {
      const Series s = gaussian_series(seed, n, seed % 3 == 0 ? 0.8 : 0.0);
      const LogScoreProfile fast = self_normalized_profile(s);
      const std::vector<double> reference = self_normalized_reference(s);
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(fast[k] - reference[k]) <=
              1e-9 * std::max(1.0, std::abs(reference[k])));
      }
    }
  }
}

TEST_CASE("substitution profiles run through the walk unchanged") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Series s = gaussian_series(seed, 40, seed % 2 ? 1.2 : 0.0);
    for (const LogScoreProfile& profile :
         {cusum_profile(s), self_normalized_profile(s)}) {
      const std::size_t base = interior_argmax(profile);
      const std::size_t walk = proposed_change_point(
          stationary_distribution(normalize_scores(profile)));
      const bool two_valued = walk == 0 || walk == base;
      CHECK(two_valued);
    }
  }
}
