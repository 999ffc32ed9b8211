#pragma once

#include <cstddef>

#include "cpd/profile.hpp"
#include "cpd/series.hpp"

namespace cpd {

// How the working sigma is estimated when the series carries none.
enum class SigmaPolicy {
  pooled_at_mle,  // pooled within-segment scale at the likelihood argmax (default)
  global          // whole-series scale (split 0)
};

// Square root of the maximum-likelihood pooled variance at the given split
// (split 0 = whole-series variance). Throws "degenerate scale" when zero.
double pooled_sigma(const Series& series, std::size_t split);

// Working sigma: the known value when present, otherwise the plug-in.
double resolve_sigma(const Series& series,
                     SigmaPolicy policy = SigmaPolicy::pooled_at_mle);

// Mean-shift estimate at split k in working-sigma units:
// (mean of x[k+1..n] - mean of x[1..k]) / sigma, 1 <= k <= n-1.
double delta_hat(const Series& series, std::size_t k, double sigma);
double delta_hat(const Series& series, std::size_t k);

// Gaussian split log likelihoods, means profiled out, scale fixed at sigma.
// scores[0] is the single-segment fit, scores[k] the two-segment fit at k.
// O(n) via prefix sums. Satisfies, for every k >= 1,
//   scores[k] - scores[0] = (n/2)(k/n)(1 - k/n) delta_hat(k)^2.
LogScoreProfile log_likelihood_profile(const Series& series, double sigma);
LogScoreProfile log_likelihood_profile(
    const Series& series, SigmaPolicy policy = SigmaPolicy::pooled_at_mle);

// Argmax of a score profile over all of 0..n-1, ties to the smallest index.
std::size_t mle_change_point(const LogScoreProfile& profile);

// Argmax restricted to interior splits [min_segment, n - min_segment].
std::size_t interior_argmax(const LogScoreProfile& profile,
                            std::size_t min_segment = 1);

}  // namespace cpd
