#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cpd {

enum class ScoreKind { gaussian_likelihood, cusum, self_normalized };

std::string_view to_string(ScoreKind kind);
ScoreKind score_kind_from_string(std::string_view name);

// Log-domain score per split candidate k = 0..n-1. For the Gaussian kind the
// entries are true log likelihoods; for the substitution kinds they are the
// statistic values H_n(k) / G_n(k) themselves, which is the exp-substitution
// expressed in log domain. Entries are finite by construction (degenerate
// statistic values are capped upstream).
class LogScoreProfile {
 public:
  LogScoreProfile(std::vector<double> scores, ScoreKind kind);

  std::size_t size() const noexcept { return scores_.size(); }
  std::span<const double> scores() const noexcept { return scores_; }
  double operator[](std::size_t k) const noexcept { return scores_[k]; }
  ScoreKind kind() const noexcept { return kind_; }

 private:
  std::vector<double> scores_;
  ScoreKind kind_;
};

// Scores exponentiated and normalized onto the simplex: L(i) = l(i)/S.
// Every weight is strictly positive (underflow is clamped to the smallest
// positive double) and they sum to 1 within 1e-12.
class NormalizedProfile {
 public:
  explicit NormalizedProfile(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }

 private:
  std::vector<double> weights_;
};

// Stationary law of the likelihood-weighted walk over split candidates.
class StationaryDistribution {
 public:
  explicit StationaryDistribution(std::vector<double> pi);

  std::size_t size() const noexcept { return pi_.size(); }
  std::span<const double> probabilities() const noexcept { return pi_; }
  double operator[](std::size_t i) const noexcept { return pi_[i]; }

 private:
  std::vector<double> pi_;
};

// Compensated (Neumaier) summation; keeps simplex checks independent of n.
double stable_sum(std::span<const double> xs);

}  // namespace cpd
