#include "cpd/profile.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cpd {

std::string_view to_string(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::gaussian_likelihood: return "likelihood";
    case ScoreKind::cusum: return "cusum";
    case ScoreKind::self_normalized: return "sn";
  }
  return "unknown";
}

ScoreKind score_kind_from_string(std::string_view name) {
  if (name == "likelihood" || name == "gaussian") return ScoreKind::gaussian_likelihood;
  if (name == "cusum") return ScoreKind::cusum;
  if (name == "sn" || name == "self-normalized") return ScoreKind::self_normalized;
  throw std::invalid_argument("unknown score kind: " + std::string(name));
}

double stable_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

LogScoreProfile::LogScoreProfile(std::vector<double> scores, ScoreKind kind)
    : scores_(std::move(scores)), kind_(kind) {
  if (scores_.size() < 2) {
    throw std::invalid_argument("LogScoreProfile: need at least 2 candidates");
  }
  for (double s : scores_) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("LogScoreProfile: non-finite score");
    }
  }
}

NormalizedProfile::NormalizedProfile(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw std::invalid_argument("NormalizedProfile: need at least 2 weights");
  }
  for (double w : weights_) {
    if (!(w > 0.0) || w > 1.0) {
      throw std::invalid_argument("NormalizedProfile: weight outside (0, 1]");
    }
  }
  if (std::abs(stable_sum(weights_) - 1.0) > 1e-12) {
    throw std::invalid_argument("NormalizedProfile: weights do not sum to 1");
  }
}

StationaryDistribution::StationaryDistribution(std::vector<double> pi)
    : pi_(std::move(pi)) {
  if (pi_.size() < 2) {
    throw std::invalid_argument("StationaryDistribution: need at least 2 states");
  }
  for (double p : pi_) {
    if (!(p >= 0.0) || p > 1.0) {
      throw std::invalid_argument("StationaryDistribution: probability outside [0, 1]");
    }
  }
  if (std::abs(stable_sum(pi_) - 1.0) > 1e-10) {
    throw std::invalid_argument("StationaryDistribution: probabilities do not sum to 1");
  }
}

}  // namespace cpd
