#include "cpd/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cpd {

namespace {

// Prefix sums of the globally centered values and their squares. Centering
// first keeps the k-sweep free of catastrophic cancellation when the data
// sit far from zero.
struct PrefixMoments {
  std::vector<double> sum;    // sum[t] = y_1 + ... + y_t, sum[0] = 0
  std::vector<double> sumsq;  // same for y^2

  explicit PrefixMoments(std::span<const double> xs) {
    const std::size_t n = xs.size();
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    sum.resize(n + 1, 0.0);
    sumsq.resize(n + 1, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const double y = xs[t] - mean;
      sum[t + 1] = sum[t] + y;
      sumsq[t + 1] = sumsq[t] + y * y;
    }
  }

  std::size_t n() const noexcept { return sum.size() - 1; }

  // Within-segment sum of squared deviations over (a, b], 1-based.
  double segment_ss(std::size_t a, std::size_t b) const {
    const double s = sum[b] - sum[a];
    const double q = sumsq[b] - sumsq[a];
    const double len = static_cast<double>(b - a);
    return std::max(q - s * s / len, 0.0);
  }

  double segment_mean(std::size_t a, std::size_t b) const {
    return (sum[b] - sum[a]) / static_cast<double>(b - a);
  }

  // Residual sum of squares of the fit with a split at k (k = 0: one mean).
  double split_ss(std::size_t k) const {
    if (k == 0) return segment_ss(0, n());
    return segment_ss(0, k) + segment_ss(k, n());
  }
};

[[noreturn]] void throw_degenerate() {
  throw std::runtime_error("degenerate scale");
}

std::size_t argmax_interior(const PrefixMoments& ps, std::size_t min_segment) {
  const std::size_t n = ps.n();
  if (min_segment < 1 || 2 * min_segment > n) {
    throw std::invalid_argument("minimum segment length does not fit the series");
  }
  // Maximizing the log likelihood over k >= 1 is minimizing the split RSS,
  // whatever the working sigma ends up being.
  std::size_t best = min_segment;
  double best_ss = ps.split_ss(min_segment);
  for (std::size_t k = min_segment + 1; k + min_segment <= n; ++k) {
    const double ss = ps.split_ss(k);
    if (ss < best_ss) {
      best_ss = ss;
      best = k;
    }
  }
  return best;
}

}  // namespace

double pooled_sigma(const Series& series, std::size_t split) {
  const std::size_t n = series.size();
  if (split >= n) {
    throw std::invalid_argument("pooled_sigma: split out of range");
  }
  const PrefixMoments ps(series.values());
  const double variance = ps.split_ss(split) / static_cast<double>(n);
  if (variance <= 0.0) throw_degenerate();
  return std::sqrt(variance);
}

double resolve_sigma(const Series& series, SigmaPolicy policy) {
  if (series.sigma()) return *series.sigma();
  if (policy == SigmaPolicy::global) return pooled_sigma(series, 0);
  const PrefixMoments ps(series.values());
  const double variance =
      ps.split_ss(argmax_interior(ps, 1)) / static_cast<double>(ps.n());
  if (variance <= 0.0) throw_degenerate();
  return std::sqrt(variance);
}

double delta_hat(const Series& series, std::size_t k, double sigma) {
  const std::size_t n = series.size();
  if (k < 1 || k >= n) {
    throw std::invalid_argument("delta_hat: split out of range");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw_degenerate();
  const PrefixMoments ps(series.values());
  return (ps.segment_mean(k, n) - ps.segment_mean(0, k)) / sigma;
}

double delta_hat(const Series& series, std::size_t k) {
  return delta_hat(series, k, resolve_sigma(series));
}

LogScoreProfile log_likelihood_profile(const Series& series, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw_degenerate();
  const std::size_t n = series.size();
  const PrefixMoments ps(series.values());
  const double inv_two_var = 0.5 / (sigma * sigma);
  // The -(n/2) log(2 pi sigma^2) constant is kept so the entries are the
  // actual log likelihoods, not just ratios to scores[0].
  const double constant = -0.5 * static_cast<double>(n) *
                          std::log(2.0 * std::numbers::pi * sigma * sigma);
  std::vector<double> scores(n);
  for (std::size_t k = 0; k < n; ++k) {
    scores[k] = constant - inv_two_var * ps.split_ss(k);
  }
  return LogScoreProfile(std::move(scores), ScoreKind::gaussian_likelihood);
}

LogScoreProfile log_likelihood_profile(const Series& series, SigmaPolicy policy) {
  return log_likelihood_profile(series, resolve_sigma(series, policy));
}

std::size_t mle_change_point(const LogScoreProfile& profile) {
  const auto scores = profile.scores();
  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return best;
}

std::size_t interior_argmax(const LogScoreProfile& profile, std::size_t min_segment) {
  const auto scores = profile.scores();
  const std::size_t n = scores.size();
  if (min_segment < 1 || 2 * min_segment > n) {
    throw std::invalid_argument("minimum segment length does not fit the series");
  }
  std::size_t best = min_segment;
  for (std::size_t k = min_segment + 1; k + min_segment <= n; ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return best;
}

}  // namespace cpd
