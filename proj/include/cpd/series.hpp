#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cpd {

// Ordered real observations with an optional known noise scale.
//
// Index convention used throughout: split k means the segments x[1..k] and
// x[k+1..n] (1-based in formulas), and k = 0 means "no change". A missing
// sigma means the working scale is estimated from the data.
class Series {
 public:
  explicit Series(std::vector<double> values,
                  std::optional<double> sigma = std::nullopt);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  const std::optional<double>& sigma() const noexcept { return sigma_; }

 private:
  std::vector<double> values_;
  std::optional<double> sigma_;
};

}  // namespace cpd
