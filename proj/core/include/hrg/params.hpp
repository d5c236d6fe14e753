#pragma once

#include <cstdint>

namespace hrg {

/// Validated model parameters with the derived constants shared by all modules.
///
/// R  = 2 ln(n/nu)                (disk radius)
/// xi = 4*alpha*nu/(pi*(2alpha-1))
/// eta = 4*nu/pi                  (used only on the alpha=1 branch)
struct ModelParams {
  double alpha;
  double nu;
  std::int64_t n;
  double R;
  double xi;
  double eta;
};

/// Throws std::domain_error naming the offending parameter for
/// alpha <= 1/2, nu <= 0 or n < 1.
ModelParams derive_params(double alpha, double nu, std::int64_t n);

}  // namespace hrg
