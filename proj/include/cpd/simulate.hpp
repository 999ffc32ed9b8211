#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cpd/detect.hpp"
#include "cpd/estimate.hpp"
#include "cpd/manifold.hpp"
#include "cpd/series.hpp"

namespace cpd {

// One Monte Carlo scenario of the Gaussian mean-shift model: r observations
// at mean 0 followed by n-r at mean delta*sigma, noise scale sigma treated
// as known by the estimators. r = 0 encodes "no change" (delta forced to 0).
struct ScenarioConfig {
  std::size_t n = 0;
  std::size_t r = 0;
  double delta = 0.0;
  double sigma = 1.0;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  ScoreKind estimator = ScoreKind::gaussian_likelihood;
  unsigned workers = 1;       // 0 = hardware concurrency
  bool keep_losses = false;

  ManifoldCoords truth() const noexcept;
  void validate() const;
};

// Deterministic function of (seed, replicate_index) only; worker count and
// execution order never touch the draws.
Series simulate_series(const ScenarioConfig& config, std::uint64_t replicate_index);

// Runs both estimators over the scenario's replicates and aggregates
// zero-pass losses against the true parameter point. Degenerate replicates
// are redrawn from fresh stream indices and counted.
RiskReport monte_carlo_risk(const ScenarioConfig& config);

// P(r_hat = 0) under the no-change model for each requested sample size.
std::vector<std::pair<std::size_t, double>> zero_probability_curve(
    const std::vector<std::size_t>& n_grid, std::size_t replicates,
    std::uint64_t seed, unsigned workers = 1);

// Per-replicate embedded estimates, for point-cloud export.
struct ScatterPair {
  ManifoldPoint mle;
  ManifoldPoint proposed;
};
std::vector<ScatterPair> scatter_cloud(const ScenarioConfig& config);

// Parametric bootstrap of both estimators' risks around the model fitted to
// a real series (the no-change fit backs the proposed estimator when it
// declares r_hat = 0).
struct BootstrapRisk {
  double risk_mle = 0.0;
  double risk_proposed = 0.0;
  Detection fit;             // fit on the input series
  double sigma_no_change = 0.0;  // global scale, used when r_hat = 0
};
BootstrapRisk parametric_bootstrap_risk(const Series& series, std::size_t reps,
                                        std::uint64_t seed, unsigned workers = 1);

}  // namespace cpd
