#include "hrg/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hrg {

double normalize_angle(double theta) {
  double t = std::remainder(theta, 2.0 * M_PI);  // (-pi, pi] up to the -pi tie
  if (t <= -M_PI) t = M_PI;
  return t;
}

double angular_distance(double a, double b) {
  double d = std::fabs(std::remainder(a - b, 2.0 * M_PI));
  return d;  // remainder gives |d| <= pi
}

double sample_radius(double alpha, double R, double u) {
  if (u < 0.0 || u > 1.0) {
    throw std::domain_error("sample_radius: u must be in [0,1], got " + std::to_string(u));
  }
  if (u == 0.0) return 0.0;
  if (u == 1.0) return R;
  // r = (1/alpha) arccosh(1 + u (cosh(alpha R) - 1)); expm1-based form keeps
  // precision for small alpha*R.
  const double m = std::expm1(alpha * R) + std::expm1(-alpha * R);  // 2(cosh(aR)-1)
  const double x = 1.0 + 0.5 * u * m;
  return std::acosh(x) / alpha;
}

bool is_connected_polar(const PolarPoint& p1, const PolarPoint& p2, double R) {
  if (p1.r + p2.r <= R) return true;  // triangle inequality, also covers r = 0
  const double dtheta = angular_distance(p1.theta, p2.theta);
  const double lhs = std::cosh(p1.r) * std::cosh(p2.r) -
                     std::sinh(p1.r) * std::sinh(p2.r) * std::cos(dtheta);
  return lhs <= std::cosh(R);
}

namespace {

// arccos of Q = (cosh a cosh b - cosh R)/(sinh a sinh b) without forming Q:
// 1 - Q = (cosh R - cosh(a-b))/(sinh a sinh b) and
// 1 + Q = (cosh(a+b) - cosh R)/(sinh a sinh b) stay accurate where the direct
// difference of e^{a+b}-sized terms loses the angle entirely.
double stable_acos_q(double a, double b, double R) {
  const double denom = std::sinh(a) * std::sinh(b);
  const double half_one_minus_q =
      std::clamp((std::cosh(R) - std::cosh(a - b)) / (2.0 * denom), 0.0, 1.0);
  if (half_one_minus_q <= 0.5) {
    return 2.0 * std::asin(std::sqrt(half_one_minus_q));
  }
  const double half_one_plus_q =
      std::clamp((std::cosh(a + b) - std::cosh(R)) / (2.0 * denom), 0.0, 1.0);
  return M_PI - 2.0 * std::asin(std::sqrt(half_one_plus_q));
}

}  // namespace

double max_connection_angle(double r1, double r2, double R) {
  if (r1 + r2 <= R) return M_PI;
  return stable_acos_q(r1, r2, R);
}

PlanePoint psi(const PolarPoint& p, double R) {
  return {p.theta * std::exp(R / 2.0) / 2.0, R - p.r};
}

PolarPoint psi_inverse(const PlanePoint& p, double R) {
  return {R - p.y, 2.0 * p.x * std::exp(-R / 2.0)};
}

double phi(double y, double y2, double R) {
  if (y + y2 >= R) {
    throw std::domain_error("phi: requires y + y2 < R (that regime is always connected)");
  }
  return 0.5 * std::exp(R / 2.0) * stable_acos_q(R - y, R - y2, R);
}

double torus_distance(double x1, double x2, double circumference) {
  double d = std::fabs(std::remainder(x1 - x2, circumference));
  return d;
}

}  // namespace hrg
