#pragma once

namespace cpd {

// A point u on the evolving-radius horn torus M in R^3. The origin (0,0,0)
// is the identified "no change" point; every other point of M encodes a
// split location and a mean shift jointly.
struct ManifoldPoint {
  double u1 = 0.0;
  double u2 = 0.0;
  double u3 = 0.0;

  bool is_origin() const noexcept { return u1 == 0.0 && u2 == 0.0 && u3 == 0.0; }
  friend bool operator==(const ManifoldPoint&, const ManifoldPoint&) = default;
};

// Coordinates on M: t = split fraction r/n in [0,1), theta = arctan of the
// mean shift in (-pi/2, pi/2). (0, theta) and (t, 0) both name the origin.
struct ManifoldCoords {
  double t = 0.0;
  double theta = 0.0;
};

// u(t, theta) = t(1-t) * [(1-cos th) cos 2pi t, (1-cos th) sin 2pi t, sin th].
// Exactly (0,0,0) when t == 0 or theta == 0.
ManifoldPoint embed(double t, double theta);
ManifoldPoint embed(const ManifoldCoords& c);

// Inverse of embed. The origin maps to (0, 0); any point that does not
// round-trip back onto M within 1e-10 (relative) is rejected.
ManifoldCoords unembed(const ManifoldPoint& u);

// Zero-pass metric: points sharing t are compared along theta; otherwise the
// path runs through the origin and the distances to it add up.
double zero_pass_distance(const ManifoldCoords& a, const ManifoldCoords& b);

}  // namespace cpd
