#include "cpd/series.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cpd {

Series::Series(std::vector<double> values, std::optional<double> sigma)
    : values_(std::move(values)), sigma_(sigma) {
  if (values_.size() < 2) {
    throw std::invalid_argument("Series: need at least 2 observations");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Series: non-finite observation");
    }
  }
  if (sigma_ && (!std::isfinite(*sigma_) || *sigma_ <= 0.0)) {
    throw std::invalid_argument("Series: sigma must be positive and finite");
  }
}

}  // namespace cpd
