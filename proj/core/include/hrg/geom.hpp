#pragma once

namespace hrg {

/// Native polar coordinates: r is the hyperbolic distance from the origin,
/// theta the angle normalized into (-pi, pi].
struct PolarPoint {
  double r;
  double theta;
};

/// Upper-half-plane / box coordinates.
struct PlanePoint {
  double x;
  double y;
};

/// Normalizes an angle into (-pi, pi].
double normalize_angle(double theta);

/// |a - b| on the circle, result in [0, pi].
double angular_distance(double a, double b);

/// Inverse radial CDF: r with (cosh(alpha r)-1)/(cosh(alpha R)-1) = u.
/// Throws std::domain_error if u is outside [0,1].
double sample_radius(double alpha, double R, double u);

/// Hyperbolic distance <= R, decided by the law-of-cosines comparison
/// cosh r1 cosh r2 - sinh r1 sinh r2 cos(dtheta) <= cosh R (no arccosh).
bool is_connected_polar(const PolarPoint& p1, const PolarPoint& p2, double R);

/// Largest angular separation at which a point at radius r2 can still be
/// within hyperbolic distance R of a point at radius r1. Decreasing in r2.
double max_connection_angle(double r1, double r2, double R);

/// The coupling map (r, theta) -> (theta e^{R/2}/2, R - r).
PlanePoint psi(const PolarPoint& p, double R);
PolarPoint psi_inverse(const PlanePoint& p, double R);

/// Half-width of the hyperbolic ball in box coordinates:
/// (1/2) e^{R/2} arccos(Q), Q clamped into [-1,1].
/// Requires y + y2 < R; callers must treat y + y2 >= R as always connected.
double phi(double y, double y2, double R);

/// min(|x1-x2| mod c, c - |x1-x2| mod c); result in [0, c/2].
double torus_distance(double x1, double x2, double circumference);

}  // namespace hrg
