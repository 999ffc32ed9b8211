#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cpd/manifold.hpp"
#include "cpd/profile.hpp"

namespace cpd {

// Full output of a detection run: the profile argmax r_mle, the walk-based
// estimate r_hat (always 0 or r_mle), the shift estimate in sigma units, the
// manifold coordinates/point, and the stationary mass at "no change".
class ChangePointEstimate {
 public:
  ChangePointEstimate(std::size_t r_mle, std::size_t r_hat, double delta_hat,
                      double t_hat, double theta_hat, const ManifoldPoint& u_hat,
                      double pi0);

  std::size_t r_mle() const noexcept { return r_mle_; }
  std::size_t r_hat() const noexcept { return r_hat_; }
  double delta_hat() const noexcept { return delta_hat_; }
  double t_hat() const noexcept { return t_hat_; }
  double theta_hat() const noexcept { return theta_hat_; }
  const ManifoldPoint& u_hat() const noexcept { return u_hat_; }
  double pi0() const noexcept { return pi0_; }

  ManifoldCoords coords() const noexcept { return {t_hat_, theta_hat_}; }

 private:
  std::size_t r_mle_;
  std::size_t r_hat_;
  double delta_hat_;
  double t_hat_;
  double theta_hat_;
  ManifoldPoint u_hat_;
  double pi0_;
};

// Zero-pass loss of an estimate against the true parameter point.
double loss(const ChangePointEstimate& estimate, const ManifoldCoords& truth);

// Scenario echo plus aggregate losses of one Monte Carlo comparison run.
struct RiskReport {
  // config echo
  std::size_t n = 0;
  std::size_t r = 0;
  double delta = 0.0;
  double sigma = 1.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  ScoreKind estimator = ScoreKind::gaussian_likelihood;

  double mean_loss_mle = 0.0;
  double mean_loss_proposed = 0.0;
  double relative_efficiency = 0.0;  // 1 - proposed/mle when mle > 0
  double zero_rate = 0.0;            // fraction of replicates with r_hat = 0
  double se_loss_mle = 0.0;          // Monte Carlo standard errors
  double se_loss_proposed = 0.0;
  std::size_t rejected_replicates = 0;

  // per-replicate losses, retained only when the scenario asks for them
  std::vector<double> losses_mle;
  std::vector<double> losses_proposed;
};

}  // namespace cpd
