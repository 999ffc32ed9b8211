#include "cpd/detect.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cpd/alt_stats.hpp"
#include "cpd/walk.hpp"

namespace cpd {

namespace {

LogScoreProfile build_profile(const Series& series, const DetectOptions& options,
                              double& sigma_out) {
  switch (options.kind) {
    case ScoreKind::cusum:
      return cusum_profile(series);
    case ScoreKind::self_normalized:
      return self_normalized_profile(series);
    case ScoreKind::gaussian_likelihood:
    default:
      break;
  }
  if (series.sigma()) {
    sigma_out = *series.sigma();
  } else if (options.sigma_policy == SigmaPolicy::global) {
    sigma_out = pooled_sigma(series, 0);
  } else {
    // Pooled at the likelihood argmax. The profile ordering over interior
    // splits does not depend on sigma, so a provisional unit-scale profile
    // locates the split the plug-in is pooled at.
    const LogScoreProfile provisional = log_likelihood_profile(series, 1.0);
    sigma_out =
        pooled_sigma(series, interior_argmax(provisional, options.min_segment));
  }
  return log_likelihood_profile(series, sigma_out);
}

}  // namespace

Detection detect(const Series& series, const DetectOptions& options) {
  const std::size_t n = series.size();

  double sigma = 0.0;
  const LogScoreProfile profile = build_profile(series, options, sigma);
  const std::size_t base = interior_argmax(profile, options.min_segment);
  if (sigma == 0.0) {
    // Substitution kinds build their profile scale-free; the shift estimate
    // still wants a working sigma (known, else pooled at the chosen split).
    sigma = series.sigma() ? *series.sigma() : pooled_sigma(series, base);
  }
  const double base_delta = delta_hat(series, base, sigma);

  // The self-normalized statistic is a squared bridge; the walk consumes its
  // square root, the |t-statistic|-scale quantity matching the first-order
  // CUSUM treatment. Monotone, so the interior argmax is untouched.
  const auto walk_score = [&](std::size_t k) {
    const double s = profile[k];
    return options.kind == ScoreKind::self_normalized ? std::sqrt(s) : s;
  };

  // With a raised minimum segment length the walk runs on the reduced
  // candidate set {0} + interior splits; by default this is the full profile.
  const std::size_t lo = options.min_segment;
  const std::size_t hi = n - options.min_segment;  // inclusive
  std::vector<double> candidate_scores;
  candidate_scores.reserve(hi - lo + 2);
  candidate_scores.push_back(walk_score(0));
  for (std::size_t k = lo; k <= hi; ++k) candidate_scores.push_back(walk_score(k));
  const LogScoreProfile walk_profile(std::move(candidate_scores), profile.kind());

  const NormalizedProfile weights = normalize_scores(walk_profile);
  const StationaryDistribution pi = stationary_distribution(weights);
  const std::size_t walk_index = proposed_change_point(pi);
  const std::size_t r_hat = (walk_index == 0) ? 0 : lo + (walk_index - 1);
  if (r_hat != 0 && r_hat != base) {
    // The interior ranking of pi matches the score ranking, so anything else
    // is a numerical fault, not a data condition.
    throw std::logic_error("detect: walk argmax escaped {0, base}");
  }

  const double delta = (r_hat == 0) ? 0.0 : base_delta;
  const double t_hat =
      (r_hat == 0) ? 0.0 : static_cast<double>(r_hat) / static_cast<double>(n);
  const double theta_hat = (r_hat == 0) ? 0.0 : std::atan(delta);
  ChangePointEstimate estimate(base, r_hat, delta, t_hat, theta_hat,
                               embed(t_hat, theta_hat), pi[0]);
  return Detection{estimate, n, base, base_delta, sigma, options.kind};
}

}  // namespace cpd
