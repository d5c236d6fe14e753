#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "hrg/specfun.hpp"

namespace hrg {

/// Parameters of the n-free limit setting plus quadrature tolerances.
struct LimitContext {
  double alpha;
  double nu;
  double xi;
  double eta;
  QuadSpec quad;
};

LimitContext make_limit_context(double alpha, double nu, QuadSpec quad = {});

enum class ClusteringRegime { subcritical, critical, supercritical };

/// The k -> infinity law gamma(k) ~ c_{alpha,nu} * s(k), with
/// s(k) = k^{2-4alpha} (1/2 < alpha < 3/4), log(k)/k (alpha = 3/4)
/// or 1/k (alpha > 3/4).
struct AsymptoticRegime {
  ClusteringRegime regime;
  double c_alpha_nu;
  std::string scale;
  double scale_exponent = 0.0;  // 2 - 4alpha, subcritical only
  double scale_at(std::int64_t k) const;
};

/// Expected neighbor count of the typical point at height y: xi e^{y/2}.
double mu_ball(const LimitContext& ctx, double y);

/// P(Po(mu_ball(y)) = k), computed in log space.
double rho(const LimitContext& ctx, double y, std::int64_t k);

/// Limiting degree pmf pi(k) = 2 alpha xi^{2alpha} Gup(k - 2alpha, xi) / k!.
double degree_pmf(const LimitContext& ctx, std::int64_t k);

/// Probability that two random neighbors of the typical point, at heights
/// y1, y2, are adjacent; the closed four-case form in z_i = e^{-y_i/2}.
double triangle_prob(double y0, double y1, double y2);

/// P(y): probability that two random neighbors of the typical point at
/// height y are adjacent. Closed form; eta branch within |alpha-1| < 1e-6.
double p_y(const LimitContext& ctx, double y);

/// Independent double-quadrature of the triangle_prob integral.
double p_y_oracle(const LimitContext& ctx, double y, const QuadSpec& spec);

/// Limiting clustering function gamma(k), k >= 2.
double gamma_k(const LimitContext& ctx, std::int64_t k);

/// Limiting clustering coefficient gamma.
double gamma_cc(const LimitContext& ctx);

/// Quadrature oracle: (1/pi(k)) int P(y) rho(y,k) alpha e^{-alpha y} dy,
/// truncated to the concentration interval (constant trunc_c, widened until
/// the discarded Poisson mass is negligible).
double gamma_k_oracle(const LimitContext& ctx, std::int64_t k, const QuadSpec& spec,
                      double trunc_c = 10.0);

/// Quadrature oracle: int P(y) (1 - rho(y,0) - rho(y,1)) alpha e^{-alpha y} dy.
double gamma_cc_oracle(const LimitContext& ctx, const QuadSpec& spec);

AsymptoticRegime asymptotic_regime(const LimitContext& ctx);

/// Exact expected degree at height y in the finite box model on n points.
double mu_box(const LimitContext& ctx, std::int64_t n, double y);

/// Expected degree at height y in the Poissonized model: quadrature over the
/// ball half-width plus the closed-form mass above height R - y.
double mu_po(const LimitContext& ctx, std::int64_t n, double y, const QuadSpec& spec);

/// CSV `k,gamma_k,gamma_k_oracle,degree_pmf` over [k_min, k_max].
void write_limits_csv(const LimitContext& ctx, std::int64_t k_min, std::int64_t k_max,
                      std::ostream& os);

}  // namespace hrg
