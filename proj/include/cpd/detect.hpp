#pragma once

#include <cmath>
#include <cstddef>

#include "cpd/estimate.hpp"
#include "cpd/gaussian.hpp"
#include "cpd/series.hpp"

namespace cpd {

struct DetectOptions {
  ScoreKind kind = ScoreKind::gaussian_likelihood;
  SigmaPolicy sigma_policy = SigmaPolicy::pooled_at_mle;
  std::size_t min_segment = 1;
};

// One full detection: score profile -> interior argmax (the r_mle slot and
// the baseline estimator for the substitution kinds) -> walk -> r_hat.
struct Detection {
  ChangePointEstimate estimate;
  std::size_t n = 0;
  std::size_t base_index = 0;  // interior argmax of the score profile
  double base_delta = 0.0;     // shift estimate at base_index, sigma units
  double sigma_used = 0.0;
  ScoreKind kind = ScoreKind::gaussian_likelihood;

  // Coordinates of the profile-argmax estimator (the MLE under the Gaussian
  // kind); the proposed estimator's coordinates live in `estimate`.
  ManifoldCoords base_coords() const noexcept {
    return {static_cast<double>(base_index) / static_cast<double>(n),
            std::atan(base_delta)};
  }
};

Detection detect(const Series& series, const DetectOptions& options = {});

}  // namespace cpd
