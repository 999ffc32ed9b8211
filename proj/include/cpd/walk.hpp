#pragma once

#include <cstddef>
#include <vector>

#include "cpd/profile.hpp"

namespace cpd {

// Softmax of the log scores: L(i) = l(i)/S computed without leaving the log
// domain until the final, overflow-safe exponentiation.
NormalizedProfile normalize_scores(const LogScoreProfile& profile);

// Closed-form stationary law of the walk on the star graph:
//   pi(0) = L(0)/D,  pi(i) = L(i)(L(i) + L(0))/D,
//   D = sum L(i)^2 + 2 L(0)(1 - L(0)).
StationaryDistribution stationary_distribution(const NormalizedProfile& weights);

// Argmax of pi, ties to the smallest index. Equals 0 or the interior score
// argmax: the interior ranking of pi matches the ranking of the weights.
std::size_t proposed_change_point(const StationaryDistribution& pi);

// Dense row-stochastic transition matrix T = D(AL)^-1 [A D(L)] over the
// star-plus-self-loops adjacency. Verification oracle only; quadratic
// memory, never built on the estimation path.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(const NormalizedProfile& weights);

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

// Independent check of the closed form: power iteration v <- vT from the
// uniform start until the sup-norm change drops below 1e-13 (at most 1e6
// sweeps). Guarded to n <= 1e4 by the dense matrix.
StationaryDistribution stationary_oracle(const NormalizedProfile& weights);

}  // namespace cpd
