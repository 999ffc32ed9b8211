#include "cpd/walk.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cpd {

NormalizedProfile normalize_scores(const LogScoreProfile& profile) {
  const auto scores = profile.scores();
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> weights(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    weights[i] = std::exp(scores[i] - top);
  }
  const double total = stable_sum(weights);
  for (double& w : weights) {
    w /= total;
    // Far-below-max scores can underflow to 0; clamp to the smallest
    // positive double so the simplex stays strictly positive. Order is
    // unaffected and the sum moves by < 1e-300.
    if (w == 0.0) w = DBL_TRUE_MIN;
  }
  return NormalizedProfile(std::move(weights));
}

StationaryDistribution stationary_distribution(const NormalizedProfile& weights) {
  const auto w = weights.weights();
  const std::size_t n = w.size();
  const double w0 = w[0];
  std::vector<double> pi(n);
  pi[0] = w0;
  for (std::size_t i = 1; i < n; ++i) {
    pi[i] = w[i] * (w[i] + w0);
  }
  // denom = sum w_i^2 + 2 w0 (1 - w0) up to rounding; normalizing by the
  // realized sum keeps the distribution exact.
  const double denom = stable_sum(pi);
  for (double& p : pi) p /= denom;
  return StationaryDistribution(std::move(pi));
}

std::size_t proposed_change_point(const StationaryDistribution& pi) {
  const auto p = pi.probabilities();
  std::size_t best = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] > p[best]) best = i;
  }
  return best;
}

TransitionMatrix::TransitionMatrix(const NormalizedProfile& weights)
    : n_(weights.size()), entries_(n_ * n_, 0.0) {
  const auto w = weights.weights();
  // Star graph plus self loops: row 0 talks to everyone, row i >= 1 only to
  // itself and 0. Row i is A(i, .) D(w) scaled by (A w)(i).
  double total = stable_sum(w);
  for (std::size_t j = 0; j < n_; ++j) {
    entries_[j] = w[j] / total;
  }
  for (std::size_t i = 1; i < n_; ++i) {
    const double row_mass = w[0] + w[i];
    entries_[i * n_ + 0] = w[0] / row_mass;
    entries_[i * n_ + i] = w[i] / row_mass;
  }
}

StationaryDistribution stationary_oracle(const NormalizedProfile& weights) {
  const std::size_t n = weights.size();
  if (n > 10000) {
    throw std::invalid_argument("stationary_oracle: dense matrix guard (n > 1e4)");
  }
  const TransitionMatrix t(weights);
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  constexpr double k_tol = 1e-13;
  constexpr std::size_t k_max_iterations = 1000000;
  for (std::size_t iter = 0; iter < k_max_iterations; ++iter) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = v[i];
      if (vi == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        next[j] += vi * t.at(i, j);
      }
    }
    double shift = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      shift = std::max(shift, std::abs(next[j] - v[j]));
    }
    v.swap(next);
    if (shift < k_tol) {
      const double total = stable_sum(v);
      for (double& p : v) p /= total;
      return StationaryDistribution(std::move(v));
    }
  }
  throw std::runtime_error("oracle did not converge");
}

}  // namespace cpd
