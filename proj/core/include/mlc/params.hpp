#pragma once

// Admissible range of the down-weighting parameter gamma: coefficients
// gamma^r / Gamma(alpha r + 1) must decrease in r, and E_alpha(gamma lambda_max)
// must stay representable.

#include <string_view>

#include "mlc/mlkernel.hpp"

namespace mlc {

enum class LimitingBound {
  Monotone,       ///< Gamma(alpha + 1)
  Representable,  ///< (kbar ln 10 + ln alpha)^alpha / rho
  Convergence,    ///< alpha = 0: the resolvent needs gamma < 1 / rho
};

std::string_view to_string(LimitingBound b);

struct AdmissibilityReport {
  double alpha = 0.0;
  double gamma = 0.0;
  double bound_monotone = 0.0;
  double bound_representable = 0.0;
  double mu = 0.0;
  bool admissible = false;
  LimitingBound limiting = LimitingBound::Monotone;
};

/// Gamma(alpha + 1) for 0 < alpha < 1 (DomainError otherwise).
double bound_monotone(double alpha);

/// (kbar ln 10 + ln alpha)^alpha / rho for 0 < alpha <= 1, rho > 0.
double bound_representable(double alpha, double rho, int kbar = kDefaultKbar);

/// mu(alpha) = min of the two bounds, for alpha in [0, 1]. At alpha = 1 the
/// monotone bound is 1; at alpha = 0 only 1 / rho applies. `gamma` is judged
/// against mu with the boundary admitted (gamma <= mu), except at alpha = 0
/// where the resolvent series needs gamma < 1 / rho.
AdmissibilityReport assess(double alpha, double gamma, double rho, int kbar = kDefaultKbar);

/// Report for gamma = mu itself.
AdmissibilityReport mu(double alpha, double rho, int kbar = kDefaultKbar);

/// True iff gamma^(r+1) / Gamma(alpha (r+1) + 1) <= gamma^r / Gamma(alpha r + 1)
/// for every r < r_max, checked in log space.
bool check_coeff_monotone(double alpha, double gamma, int r_max);

}  // namespace mlc
