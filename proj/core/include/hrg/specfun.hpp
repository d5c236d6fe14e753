#pragma once

#include <functional>

#include "hrg/errors.hpp"

namespace hrg {

struct QuadSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
};

/// Integrable endpoint behavior f ~ (x-lo)^lo_exponent (resp. (hi-x)^...).
/// Exponents in (-1, 0) trigger a power substitution that regularizes the
/// endpoint; 0 means no singularity.
struct EndpointHint {
  double lo_exponent = 0.0;
  double hi_exponent = 0.0;
};

/// Globally adaptive Gauss-Kronrod 7-15 on a finite interval.
/// Throws ConvergenceError (carrying the best estimate) on budget exhaustion.
double quad_adaptive(const std::function<double(double)>& f, double lo, double hi,
                     const QuadSpec& spec, EndpointHint hint = {});

/// [lo, inf) via the rational map x = lo + t/(1-t).
double quad_to_inf(const std::function<double(double)>& f, double lo, const QuadSpec& spec);

/// Upper incomplete gamma for any real a, x > 0; series/continued-fraction
/// for a >= 0, downward recurrence from a+m in [0,1) for a < 0.
double upper_inc_gamma(double a, double x);

/// log of the above, stable for large positive a (where the linear value
/// overflows).
double log_upper_inc_gamma(double a, double x);

/// Lower incomplete beta, non-regularized: int_0^x u^{a-1}(1-u)^{b-1} du.
/// a > 0; b may be <= 0 provided x < 1.
double lower_inc_beta(double x, double a, double b);

/// Complete beta, a > 0, b > 0.
double beta_fn(double a, double b);

/// Tricomi confluent hypergeometric via its integral representation,
/// peak-normalized internally. a > 0, z > 0.
double tricomi_u(double a, double b, double z);
double log_tricomi_u(double a, double b, double z);

/// The G^{3,0}_{2,3}(xi | 1, 3-2alpha ; 3-4alpha, q, 0) family, evaluated by
/// the 1-D integral reduction (in t = xi/z form):
///   G = Gamma(2alpha)^{-1} int_xi^inf t^{q-1} e^{-t} B^-(1-xi/t; 2alpha, 3-4alpha) dt.
double meijer_g_3023(double alpha, double q, double xi);

/// Alternative route through the upper incomplete gamma (for cross-checks):
///   G = Gamma(2alpha)^{-1} int_0^1 Gup(q, xi/s) s^{2-4alpha} (1-s)^{2alpha-1} ds.
double meijer_g_3023_gamma_route(double alpha, double q, double xi);

/// Dilogarithm on [0, 1].
double dilog(double z);

/// log of int_xi^inf t^p e^{-t} w(t) dt for a positive, polynomially bounded
/// weight; the window is sized from p + weight_power_bound. Workhorse behind
/// the large-argument gamma/Meijer ratios.
double log_gamma_tail_integral(double p, double xi, const std::function<double(double)>& weight,
                               double weight_power_bound = 0.0);

namespace detail {

/// Signed variant scaled against a reference:
/// int_xi^inf t^p e^{-t} w(t) dt / exp(log_ref); w may change sign.
double weighted_gamma_tail_over_ref(double p, double xi,
                                    const std::function<double(double)>& weight,
                                    double weight_power_bound, double log_ref);

}  // namespace detail

}  // namespace hrg
