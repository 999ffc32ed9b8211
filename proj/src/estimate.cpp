#include "cpd/estimate.hpp"

#include <cmath>
#include <stdexcept>

namespace cpd {

ChangePointEstimate::ChangePointEstimate(std::size_t r_mle, std::size_t r_hat,
                                         double delta_hat, double t_hat,
                                         double theta_hat,
                                         const ManifoldPoint& u_hat, double pi0)
    : r_mle_(r_mle),
      r_hat_(r_hat),
      delta_hat_(delta_hat),
      t_hat_(t_hat),
      theta_hat_(theta_hat),
      u_hat_(u_hat),
      pi0_(pi0) {
  if (r_mle_ == 0) {
    throw std::invalid_argument("ChangePointEstimate: r_mle must be interior");
  }
  if (r_hat_ != 0 && r_hat_ != r_mle_) {
    throw std::invalid_argument("ChangePointEstimate: r_hat must be 0 or r_mle");
  }
  if (r_hat_ == 0 && (delta_hat_ != 0.0 || !u_hat_.is_origin())) {
    throw std::invalid_argument(
        "ChangePointEstimate: no-change estimate must carry zero shift");
  }
  if (!(pi0_ >= 0.0 && pi0_ <= 1.0)) {
    throw std::invalid_argument("ChangePointEstimate: pi0 outside [0, 1]");
  }
  if (!(u_hat_ == embed(t_hat_, theta_hat_))) {
    throw std::invalid_argument(
        "ChangePointEstimate: u_hat inconsistent with (t_hat, theta_hat)");
  }
}

double loss(const ChangePointEstimate& estimate, const ManifoldCoords& truth) {
  return zero_pass_distance(estimate.coords(), truth);
}

}  // namespace cpd
