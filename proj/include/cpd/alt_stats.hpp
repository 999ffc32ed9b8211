#pragma once

#include "cpd/profile.hpp"
#include "cpd/series.hpp"

namespace cpd {

// Cap for degenerate self-normalized scores: just below -log of the smallest
// positive double, so a capped score still exponentiates to a nonzero weight
// while dominating any realistic finite statistic value.
inline constexpr double k_degenerate_score_cap = 745.0;

// CUSUM profile H_n(k) = |sum_{i<=k}(x_i - xbar)| / sqrt(n), stored directly
// as log scores (the exp substitution in log domain). scores[0] = 0.
LogScoreProfile cusum_profile(const Series& series);

// Self-normalized profile G_n(k) = S_k^2 / (V_n(k)/n) with the two-sided
// bridge normalizer V_n. O(n) via prefix-sum recurrences; a direct O(n^2)
// evaluation lives in the tests as the reference oracle. Degenerate V is
// capped, not raised: V = 0 with S_k != 0 scores the cap, otherwise 0.
LogScoreProfile self_normalized_profile(const Series& series);

}  // namespace cpd
