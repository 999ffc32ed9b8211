#include "cpd/alt_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cpd {

namespace {

// Prefix sums of the globally centered observations. Both statistics are
// shift invariant, so centering changes nothing but the conditioning.
std::vector<double> centered_prefix(std::span<const double> xs) {
  const std::size_t n = xs.size();
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    prefix[t + 1] = prefix[t] + (xs[t] - mean);
  }
  return prefix;
}

double sum_1_to(double m) { return 0.5 * m * (m + 1.0); }
double sum_sq_1_to(double m) { return m * (m + 1.0) * (2.0 * m + 1.0) / 6.0; }

}  // namespace

LogScoreProfile cusum_profile(const Series& series) {
  const std::size_t n = series.size();
  const auto prefix = centered_prefix(series.values());
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> scores(n);
  for (std::size_t k = 0; k < n; ++k) {
    scores[k] = std::abs(prefix[k]) * inv_sqrt_n;
  }
  return LogScoreProfile(std::move(scores), ScoreKind::cusum);
}

LogScoreProfile self_normalized_profile(const Series& series) {
  const std::size_t n = series.size();
  if (n < 4) {
    throw std::invalid_argument(
        "self_normalized_profile: need at least 4 observations");
  }
  const auto p = centered_prefix(series.values());

  // Prefix aggregates of the prefix sums themselves: with P_t the centered
  // partial sum, the two bridge normalizers expand into
  //   sum P_t^2, sum t P_t, sum P_t and pure index sums,
  // making every V_n(k) an O(1) combination.
  std::vector<double> sq(n + 1, 0.0);    // sum_{t<=k} P_t^2
  std::vector<double> lin(n + 1, 0.0);   // sum_{t<=k} t P_t
  std::vector<double> plain(n + 1, 0.0); // sum_{t<=k} P_t
  for (std::size_t t = 1; t <= n; ++t) {
    sq[t] = sq[t - 1] + p[t] * p[t];
    lin[t] = lin[t - 1] + static_cast<double>(t) * p[t];
    plain[t] = plain[t - 1] + p[t];
  }

  const double nd = static_cast<double>(n);
  std::vector<double> scores(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double md = nd - kd;
    const double pk = p[k];

    // Left: sum_{t<=k} (P_t - (t/k) P_k)^2.
    const double slope_l = pk / kd;
    const double v_left =
        sq[k] - 2.0 * slope_l * lin[k] + slope_l * slope_l * sum_sq_1_to(kd);

    // Right: sum_{t>k} (P_t - P_k - ((t-k)/m)(P_n - P_k))^2.
    const double slope_r = (p[n] - pk) / md;
    const double sq_tail = sq[n] - sq[k];
    const double plain_tail = plain[n] - plain[k];
    const double lin_tail = (lin[n] - lin[k]) - kd * plain_tail;  // sum (t-k) P_t
    const double v_right = sq_tail - 2.0 * pk * plain_tail -
                           2.0 * slope_r * lin_tail + md * pk * pk +
                           2.0 * pk * slope_r * sum_1_to(md) +
                           slope_r * slope_r * sum_sq_1_to(md);

    const double v = std::max(v_left, 0.0) + std::max(v_right, 0.0);
    const double s = pk;
    if (v <= 0.0) {
      scores[k] = (s != 0.0) ? k_degenerate_score_cap : 0.0;
    } else {
      scores[k] = std::min(s * s * nd / v, k_degenerate_score_cap);
    }
  }
  return LogScoreProfile(std::move(scores), ScoreKind::self_normalized);
}

}  // namespace cpd
