#include "hrg/limits.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hrg/geom.hpp"

namespace hrg {
namespace {

constexpr double kAlphaOneWindow = 1e-6;
constexpr std::int64_t kDirectFormulaMaxK = 80;
constexpr std::int64_t kMaxClosedFormK = 1'000'000;

double log_rho(const LimitContext& ctx, double y, std::int64_t k) {
  const double log_mu = std::log(ctx.xi) + 0.5 * y;
  return static_cast<double>(k) * log_mu - ctx.xi * std::exp(0.5 * y) -
         std::lgamma(static_cast<double>(k) + 1.0);
}

/// eta-branch P(y) in z = e^{-y/2}.
double p_y_eta(double z) {
  constexpr double kPi2 = M_PI * M_PI;
  double log_term = 0.0;
  const double one_minus_z = 1.0 - z;
  if (one_minus_z > 0.0) {
    log_term = 0.25 * (1.0 - 4.0 * z + 3.0 * z * z) * std::log(one_minus_z);
  }
  return 2.25 * z + log_term - (7.0 + kPi2) / 8.0 * z * z + 0.5 * z * z * dilog(z);
}

/// General-alpha P(y) in z = e^{-y/2} (alpha != 1).
double p_y_general(double alpha, double z) {
  const double a = alpha;
  const double am1 = a - 1.0;
  const double ah = a - 0.5;
  const double t1 = -1.0 / (8.0 * am1 * a);
  const double t2 = ah * z / am1;
  const double t3 = -ah * ah * z * z / (4.0 * am1 * am1);
  const double coef = std::pow(2.0, -4.0 * a - 1.0) * (3.0 * a - 1.0) / (a * am1 * am1) +
                      ah * lower_inc_beta(0.5, 1.0 + 2.0 * a, 2.0 * a - 2.0) / (2.0 * am1 * a);
  const double z4a2 = std::pow(z, 4.0 * a - 2.0);
  const double t4 = z4a2 * coef;
  const double t5 = std::pow(1.0 - z, 2.0 * a) / (8.0 * am1 * a);
  const double t6 = z >= 1.0 ? 0.0
                             : -z4a2 * lower_inc_beta(1.0 - z, 2.0 * a, 3.0 - 4.0 * a) /
                                   (4.0 * am1);
  return t1 + t2 + t3 + t4 + t5 + t6;
}

double cb_constant(double alpha) {
  return std::pow(2.0, -4.0 * alpha) * (3.0 * alpha - 1.0) / (alpha - 1.0) +
         (alpha - 0.5) * lower_inc_beta(0.5, 1.0 + 2.0 * alpha, 2.0 * alpha - 2.0);
}

/// gamma(k) for alpha != 1. Terms are assembled as ratios against
/// Gup(k-2a, xi); the Tricomi-U and Meijer-G factors are used directly up to
/// kDirectFormulaMaxK and through their integral-ratio forms beyond (log
/// space throughout, so k up to 1e6 stays finite).
double gamma_k_general(const LimitContext& ctx, std::int64_t k) {
  const double a = ctx.alpha;
  const double xi = ctx.xi;
  const double kk = static_cast<double>(k);
  const double am1 = a - 1.0;
  const double ah = a - 0.5;
  const double lref = log_upper_inc_gamma(kk - 2.0 * a, xi);

  const double r2 = std::exp(log_upper_inc_gamma(kk - 2.0 * a - 2.0, xi) - lref);
  const double r1 = std::exp(log_upper_inc_gamma(kk - 2.0 * a - 1.0, xi) - lref);
  const double r6 = std::exp(log_upper_inc_gamma(kk - 6.0 * a + 2.0, xi) - lref);

  const double t2 = -2.0 * a * ah * ah * xi * xi / am1 * r2;
  const double t3 = 8.0 * a * ah * xi * r1;
  const double t4 = 4.0 * std::pow(xi, 4.0 * a - 2.0) * cb_constant(a) * r6;

  double t1_plus_t5 = 0.0;
  double t6 = 0.0;
  if (k <= kDirectFormulaMaxK) {
    const double log_u = log_tricomi_u(2.0 * a + 1.0, 1.0 + kk - 2.0 * a, xi);
    const double t5 = std::exp((kk - 2.0 * a) * std::log(xi) + std::lgamma(2.0 * a + 1.0) -
                               xi + log_u - lref);
    t1_plus_t5 = -1.0 + t5;
    const double g = meijer_g_3023(a, -6.0 * a + kk + 2.0, xi);
    t6 = -std::pow(xi, 4.0 * a - 2.0) *
         std::exp(std::lgamma(2.0 * a + 1.0) + std::log(g) - lref);
  } else {
    // -1 + U-term as one expectation: E[expm1(2a log1p(-xi/T))]
    auto w_u = [&](double t) { return -std::expm1(2.0 * a * std::log1p(-xi / t)); };
    t1_plus_t5 = -detail::weighted_gamma_tail_over_ref(kk - 2.0 * a - 1.0, xi, w_u, 0.0, lref);
    auto w_g = [&](double t) {
      const double x = 1.0 - xi / t;
      return x <= 0.0 ? 0.0 : lower_inc_beta(x, 2.0 * a, 3.0 - 4.0 * a);
    };
    const double wpb = std::max(0.0, 4.0 * a - 3.0);
    t6 = -2.0 * a * std::pow(xi, 4.0 * a - 2.0) *
         detail::weighted_gamma_tail_over_ref(kk + 1.0 - 6.0 * a, xi, w_g, wpb, lref);
  }
  return (t1_plus_t5 + t2 + t3 + t4 + t6) / (8.0 * a * am1);
}

/// eta-branch gamma(k) = I^(k)/pi(k) with the analytic Gup pieces and the
/// log/dilog quadratures in t = eta/z coordinates.
double gamma_k_eta(const LimitContext& ctx, std::int64_t k) {
  const double eta = ctx.eta;
  const double kk = static_cast<double>(k);
  constexpr double kPi2 = M_PI * M_PI;
  const double lref = log_upper_inc_gamma(kk - 2.0, eta);

  const double r3 = std::exp(log_upper_inc_gamma(kk - 3.0, eta) - lref);
  const double r4 = std::exp(log_upper_inc_gamma(kk - 4.0, eta) - lref);

  auto w_log = [&](double t) {
    const double z = eta / t;
    const double omz = 1.0 - z;
    if (omz <= 0.0) return 0.0;
    return (1.0 - 4.0 * z + 3.0 * z * z) * std::log(omz);
  };
  auto w_dilog = [&](double t) {
    const double z = eta / t;
    return z * z * dilog(std::min(z, 1.0));
  };
  const double q_log =
      detail::weighted_gamma_tail_over_ref(kk - 3.0, eta, w_log, 0.0, lref);
  const double q_dilog =
      detail::weighted_gamma_tail_over_ref(kk - 3.0, eta, w_dilog, 0.0, lref);

  return 2.25 * eta * r3 - (7.0 + kPi2) / 8.0 * eta * eta * r4 + 0.25 * q_log + 0.5 * q_dilog;
}

/// eta-branch I^(k) (only k = 0, 1 needed, for gamma).
double i_k_eta(const LimitContext& ctx, std::int64_t k) {
  const double pi_k = degree_pmf(ctx, k);
  return gamma_k_eta(ctx, k) * pi_k;
}

double gamma_cc_eta(const LimitContext& ctx) {
  constexpr double kPi2 = M_PI * M_PI;
  const double j_const = (575.0 - 12.0 * kPi2) / 576.0;
  return j_const - i_k_eta(ctx, 0) - i_k_eta(ctx, 1);
}

double gamma_cc_general(const LimitContext& ctx) {
  const double a = ctx.alpha;
  const double xi = ctx.xi;
  const double am1 = a - 1.0;
  const double ah = a - 0.5;
  const double bm = lower_inc_beta(0.5, 1.0 + 2.0 * a, 2.0 * a - 2.0);
  auto gstar = [&](double q) { return upper_inc_gamma(q + 1.0, xi) + upper_inc_gamma(q, xi); };

  const double poly = (2.0 + 4.0 * a + 13.0 * a * a - 34.0 * a * a * a -
                       12.0 * a * a * a * a + 24.0 * a * a * a * a * a) /
                      (16.0 * am1 * am1 * a * (a + 1.0) * (2.0 * a + 1.0));
  double g = poly + std::pow(2.0, -1.0 - 4.0 * a) / (am1 * am1);
  g += ah * (beta_fn(2.0 * a, 2.0 * a + 1.0) + bm) / (2.0 * am1 * (3.0 * a - 1.0));
  g += std::pow(xi, 2.0 * a) * gstar(-2.0 * a) / (4.0 * am1);
  g += std::pow(xi, 2.0 * a + 2.0) * a * ah * ah * gstar(-2.0 * a - 2.0) / (2.0 * am1 * am1);
  g -= std::pow(xi, 2.0 * a + 1.0) * a * (2.0 * a - 1.0) * gstar(-2.0 * a - 1.0) / am1;
  g -= std::pow(xi, 6.0 * a - 2.0) * std::pow(2.0, -4.0 * a) * (3.0 * a - 1.0) *
       gstar(-6.0 * a + 2.0) / (am1 * am1);
  g -= std::pow(xi, 6.0 * a - 2.0) * ah * bm * gstar(-6.0 * a + 2.0) / am1;
  // the xi factor on the second U is required by gamma = J - I0 - I1
  g -= std::exp(-xi) * std::tgamma(2.0 * a + 1.0) *
       (tricomi_u(2.0 * a + 1.0, 1.0 - 2.0 * a, xi) +
        xi * tricomi_u(2.0 * a + 1.0, 2.0 - 2.0 * a, xi)) /
       (4.0 * am1);
  g += std::pow(xi, 6.0 * a - 2.0) * std::tgamma(2.0 * a + 1.0) *
       (meijer_g_3023(a, -6.0 * a + 2.0, xi) + meijer_g_3023(a, -6.0 * a + 3.0, xi)) /
       (4.0 * am1);
  return g;
}

}  // namespace

LimitContext make_limit_context(double alpha, double nu, QuadSpec quad) {
  if (!(alpha > 0.5)) {
    throw std::domain_error("make_limit_context: alpha must be > 1/2");
  }
  if (!(nu > 0.0)) {
    throw std::domain_error("make_limit_context: nu must be > 0");
  }
  LimitContext ctx;
  ctx.alpha = alpha;
  ctx.nu = nu;
  ctx.xi = 4.0 * alpha * nu / (M_PI * (2.0 * alpha - 1.0));
  ctx.eta = 4.0 * nu / M_PI;
  ctx.quad = quad;
  return ctx;
}

double AsymptoticRegime::scale_at(std::int64_t k) const {
  const double kk = static_cast<double>(k);
  switch (regime) {
    case ClusteringRegime::subcritical: return std::pow(kk, scale_exponent);
    case ClusteringRegime::critical: return std::log(kk) / kk;
    case ClusteringRegime::supercritical: return 1.0 / kk;
  }
  return 0.0;
}

double mu_ball(const LimitContext& ctx, double y) {
  if (y < 0.0) throw std::domain_error("mu_ball: y must be >= 0");
  return ctx.xi * std::exp(0.5 * y);
}

double rho(const LimitContext& ctx, double y, std::int64_t k) {
  if (y < 0.0 || k < 0) throw std::domain_error("rho: requires y >= 0 and k >= 0");
  return std::exp(log_rho(ctx, y, k));
}

double degree_pmf(const LimitContext& ctx, std::int64_t k) {
  if (k < 0) throw std::domain_error("degree_pmf: k must be >= 0");
  const double a = ctx.alpha;
  const double lg = std::log(2.0 * a) + 2.0 * a * std::log(ctx.xi) +
                    log_upper_inc_gamma(static_cast<double>(k) - 2.0 * a, ctx.xi) -
                    std::lgamma(static_cast<double>(k) + 1.0);
  return std::exp(lg);
}

double triangle_prob(double y0, double y1, double y2) {
  if (y0 < 0.0 || y1 < 0.0 || y2 < 0.0) {
    throw std::domain_error("triangle_prob: heights must be >= 0");
  }
  const double z0 = std::exp(-0.5 * y0);
  double z1 = std::exp(-0.5 * y1);
  double z2 = std::exp(-0.5 * y2);
  if (z1 < z2) std::swap(z1, z2);
  auto g = [](double a, double b, double c) {
    return 0.25 * (c / b + b / c + a * a / (b * c) + 2.0 - 2.0 * a / b - 2.0 * a / c);
  };
  if (z0 >= z1) {
    if (z0 >= z1 + z2) return 1.0;
    return 1.0 - g(z0, z1, z2);
  }
  if (z1 >= z0 + z2) return z0 / z1;
  return (z0 / z1) * (1.0 - g(z1, z0, z2));
}

double p_y(const LimitContext& ctx, double y) {
  if (y < 0.0) throw std::domain_error("p_y: y must be >= 0");
  const double z = std::exp(-0.5 * y);
  if (std::fabs(ctx.alpha - 1.0) < kAlphaOneWindow) return p_y_eta(z);
  return p_y_general(ctx.alpha, z);
}

double p_y_oracle(const LimitContext& ctx, double y, const QuadSpec& spec) {
  if (y < 0.0) throw std::domain_error("p_y_oracle: y must be >= 0");
  const double rate = ctx.alpha - 0.5;
  const double cut = 34.0 / rate;  // weight below e^{-34}
  const double z0 = std::exp(-0.5 * y);

  auto inner = [&](double y1) {
    const double z1 = std::exp(-0.5 * y1);
    // case boundaries of triangle_prob as breakpoints
    double pts[4];
    int npts = 0;
    pts[npts++] = y;
    pts[npts++] = y1;
    const double d = std::fabs(z0 - z1);
    if (d > 0.0 && d < 1.0) pts[npts++] = -2.0 * std::log(d);
    const double s = z0 + z1;
    if (s < 1.0) pts[npts++] = -2.0 * std::log(s);
    std::sort(pts, pts + npts);

    auto f = [&](double y2) {
      return triangle_prob(y, y1, y2) * std::exp(-rate * y2);
    };
    double total = 0.0;
    double prev = 0.0;
    for (int i = 0; i < npts; ++i) {
      if (pts[i] > prev && pts[i] < cut) {
        total += quad_adaptive(f, prev, pts[i], spec);
        prev = pts[i];
      }
    }
    total += quad_adaptive(f, prev, cut, spec);
    return total;
  };

  auto outer = [&](double y1) { return inner(y1) * std::exp(-rate * y1); };
  double total = 0.0;
  if (y > 0.0 && y < cut) {
    total = quad_adaptive(outer, 0.0, y, spec) + quad_adaptive(outer, y, cut, spec);
  } else {
    total = quad_adaptive(outer, 0.0, cut, spec);
  }
  return rate * rate * total;
}

double gamma_k(const LimitContext& ctx, std::int64_t k) {
  if (k < 2) throw std::domain_error("gamma_k: k must be >= 2");
  if (k > kMaxClosedFormK) {
    throw std::domain_error("gamma_k: k capped at 1e6 for closed-form evaluation");
  }
  if (std::fabs(ctx.alpha - 1.0) < kAlphaOneWindow) return gamma_k_eta(ctx, k);
  return gamma_k_general(ctx, k);
}

double gamma_cc(const LimitContext& ctx) {
  if (std::fabs(ctx.alpha - 1.0) < kAlphaOneWindow) return gamma_cc_eta(ctx);
  return gamma_cc_general(ctx);
}

double gamma_k_oracle(const LimitContext& ctx, std::int64_t k, const QuadSpec& spec,
                      double trunc_c) {
  if (k < 2) throw std::domain_error("gamma_k_oracle: k must be >= 2");
  const double kk = static_cast<double>(k);
  const double y_star = 2.0 * std::log(std::max(kk, ctx.xi) / ctx.xi);
  const double margin =
      trunc_c * std::sqrt(kk * std::log(std::max(kk, 3.0))) + 30.0;
  double y_lo = kk - margin <= ctx.xi ? 0.0 : 2.0 * std::log((kk - margin) / ctx.xi);
  double y_hi = 2.0 * std::log((kk + margin) / ctx.xi);

  const double log_rho_peak = log_rho(ctx, y_star, k);
  while (y_lo > 0.0 && log_rho(ctx, y_lo, k) - log_rho_peak > -46.0) {
    y_lo = std::max(0.0, y_lo - 2.0);
  }
  while (log_rho(ctx, y_hi, k) - log_rho_peak > -46.0) y_hi += 2.0;

  // peak factored out so the quadrature runs on an O(1) integrand regardless
  // of how deep rho * e^{-alpha y} sits at the concentration height
  const double log_scale = log_rho_peak - ctx.alpha * y_star;
  auto f = [&](double y) {
    const double e = log_rho(ctx, y, k) - ctx.alpha * y - log_scale;
    if (e < -700.0) return 0.0;
    return p_y(ctx, y) * ctx.alpha * std::exp(e);
  };
  double integral = 0.0;
  if (y_star > y_lo && y_star < y_hi) {
    integral = quad_adaptive(f, y_lo, y_star, spec) + quad_adaptive(f, y_star, y_hi, spec);
  } else {
    integral = quad_adaptive(f, y_lo, y_hi, spec);
  }
  const double log_pmf = std::log(2.0 * ctx.alpha) + 2.0 * ctx.alpha * std::log(ctx.xi) +
                         log_upper_inc_gamma(kk - 2.0 * ctx.alpha, ctx.xi) -
                         std::lgamma(kk + 1.0);
  return integral * std::exp(log_scale - log_pmf);
}

double gamma_cc_oracle(const LimitContext& ctx, const QuadSpec& spec) {
  const double cut = 42.0 / ctx.alpha + 12.0;
  auto f = [&](double y) {
    const double mu = mu_ball(ctx, y);
    const double tail = -std::expm1(-mu) - mu * std::exp(-mu);  // P(Po(mu) >= 2)
    return p_y(ctx, y) * tail * ctx.alpha * std::exp(-ctx.alpha * y);
  };
  return quad_adaptive(f, 0.0, 4.0, spec) + quad_adaptive(f, 4.0, cut, spec);
}

AsymptoticRegime asymptotic_regime(const LimitContext& ctx) {
  const double a = ctx.alpha;
  AsymptoticRegime out;
  if (a > 0.75) {
    out.regime = ClusteringRegime::supercritical;
    out.c_alpha_nu = 8.0 * a * ctx.nu / (M_PI * (4.0 * a - 3.0));
    out.scale = "1/k";
  } else if (a == 0.75) {
    out.regime = ClusteringRegime::critical;
    out.c_alpha_nu = 6.0 * ctx.nu / M_PI;
    out.scale = "log(k)/k";
  } else {
    out.regime = ClusteringRegime::subcritical;
    const double am1 = a - 1.0;
    out.c_alpha_nu =
        ((3.0 * a - 1.0) / (std::pow(2.0, 4.0 * a + 1.0) * a * am1 * am1) +
         (a - 0.5) * lower_inc_beta(0.5, 2.0 * a + 1.0, 2.0 * a - 2.0) / (2.0 * am1 * a) -
         beta_fn(2.0 * a, 3.0 - 4.0 * a) / (4.0 * am1)) *
        std::pow(ctx.xi, 4.0 * a - 2.0);
    out.scale = "k^(2-4alpha)";
    out.scale_exponent = 2.0 - 4.0 * a;
  }
  return out;
}

double mu_box(const LimitContext& ctx, std::int64_t n, double y) {
  const double R = 2.0 * std::log(static_cast<double>(n) / ctx.nu);
  if (y < 0.0 || y > R) throw std::domain_error("mu_box: requires 0 <= y <= R");
  const double mu = mu_ball(ctx, y);
  const double ah = ctx.alpha - 0.5;
  if (y <= 2.0 * std::log(M_PI / 2.0)) {
    return mu * (-std::expm1(-ah * R));
  }
  const double half_pi_pow = std::pow(M_PI / 2.0, -(2.0 * ctx.alpha - 1.0));
  const double phi_n = half_pi_pow * std::exp(-ah * (R - y)) +
                       ctx.nu / ctx.xi * std::exp(-ah * R - 0.5 * y) -
                       ctx.nu / ctx.xi * std::pow(M_PI / 2.0, -2.0 * ctx.alpha) *
                           std::exp(-ah * (R - y));
  return mu * (1.0 - phi_n);
}

double mu_po(const LimitContext& ctx, std::int64_t n, double y, const QuadSpec& spec) {
  const double R = 2.0 * std::log(static_cast<double>(n) / ctx.nu);
  if (y < 0.0 || y >= R) throw std::domain_error("mu_po: requires 0 <= y < R");
  auto f = [&](double y2) {
    return 2.0 * phi(y, y2, R) * ctx.alpha * ctx.nu / M_PI * std::exp(-ctx.alpha * y2);
  };
  const double i1 = quad_adaptive(f, 0.0, R - y, spec);
  const double i2 = std::pow(static_cast<double>(n), 1.0 - 2.0 * ctx.alpha) *
                    std::pow(ctx.nu, 2.0 * ctx.alpha) * std::expm1(ctx.alpha * y);
  return i1 + i2;
}

void write_limits_csv(const LimitContext& ctx, std::int64_t k_min, std::int64_t k_max,
                      std::ostream& os) {
  os << "k,gamma_k,gamma_k_oracle,degree_pmf\n";
  for (std::int64_t k = std::max<std::int64_t>(2, k_min); k <= k_max; ++k) {
    os << k << ',' << gamma_k(ctx, k) << ',' << gamma_k_oracle(ctx, k, ctx.quad) << ','
       << degree_pmf(ctx, k) << '\n';
  }
}

}  // namespace hrg
