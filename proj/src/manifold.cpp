#include "cpd/manifold.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpd {

namespace {

constexpr double k_two_pi = 2.0 * std::numbers::pi;
constexpr double k_half_pi = std::numbers::pi / 2.0;

double max_abs(const ManifoldPoint& u) {
  return std::max({std::abs(u.u1), std::abs(u.u2), std::abs(u.u3)});
}

}  // namespace

ManifoldPoint embed(double t, double theta) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw std::invalid_argument("embed: t outside [0, 1)");
  }
  if (!(theta > -k_half_pi && theta < k_half_pi)) {
    throw std::invalid_argument("embed: theta outside (-pi/2, pi/2)");
  }
  if (t == 0.0 || theta == 0.0) {
    return {0.0, 0.0, 0.0};  // identified no-change point
  }
  const double radius = t * (1.0 - t);
  // 1 - cos(theta) as 2 sin^2(theta/2): no cancellation for small shifts.
  const double half = std::sin(theta / 2.0);
  const double one_minus_cos = 2.0 * half * half;
  const double angle = k_two_pi * t;
  return {radius * one_minus_cos * std::cos(angle),
          radius * one_minus_cos * std::sin(angle),
          radius * std::sin(theta)};
}

ManifoldPoint embed(const ManifoldCoords& c) { return embed(c.t, c.theta); }

ManifoldCoords unembed(const ManifoldPoint& u) {
  if (u.is_origin()) {
    return {0.0, 0.0};
  }
  // Quadrant-aware angle wrapped to [0, 2pi); a bare arctan(u2/u1) would
  // collapse t and 1/2 - t onto the same value.
  double angle = std::atan2(u.u2, u.u1);
  if (angle < 0.0) angle += k_two_pi;
  const double t = angle / k_two_pi;
  const double rho = std::hypot(u.u1, u.u2);
  const double radius = t * (1.0 - t);
  const double theta = std::atan2(u.u3, radius - rho);
  if (!(t > 0.0 && t < 1.0) || !(theta > -k_half_pi && theta < k_half_pi)) {
    throw std::invalid_argument("unembed: point off manifold");
  }
  const ManifoldPoint back = embed(t, theta);
  const double scale = max_abs(u);
  if (std::max({std::abs(back.u1 - u.u1), std::abs(back.u2 - u.u2),
                std::abs(back.u3 - u.u3)}) > 1e-10 * scale) {
    throw std::invalid_argument("unembed: point off manifold");
  }
  return {t, theta};
}

double zero_pass_distance(const ManifoldCoords& a, const ManifoldCoords& b) {
  // The identifications (0, theta) == (t, 0) == origin need no special case:
  // both branches already vanish on them.
  if (a.t == b.t) {
    return a.t * (1.0 - a.t) * std::abs(a.theta - b.theta);
  }
  return a.t * (1.0 - a.t) * std::abs(a.theta) +
         b.t * (1.0 - b.t) * std::abs(b.theta);
}

}  // namespace cpd
