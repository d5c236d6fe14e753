#include "hrg/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hrg {

ModelParams derive_params(double alpha, double nu, std::int64_t n) {
  if (!(alpha > 0.5)) {
    throw std::domain_error("alpha must be > 1/2, got " + std::to_string(alpha));
  }
  if (!(nu > 0.0)) {
    throw std::domain_error("nu must be > 0, got " + std::to_string(nu));
  }
  if (n < 1) {
    throw std::domain_error("n must be >= 1, got " + std::to_string(n));
  }
  ModelParams p;
  p.alpha = alpha;
  p.nu = nu;
  p.n = n;
  p.R = 2.0 * std::log(static_cast<double>(n) / nu);
  p.xi = 4.0 * alpha * nu / (M_PI * (2.0 * alpha - 1.0));
  p.eta = 4.0 * nu / M_PI;
  return p;
}

}  // namespace hrg
