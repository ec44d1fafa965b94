#include "mlc/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mlc/error.hpp"

namespace mlc {

std::string_view to_string(LimitingBound b) {
  switch (b) {
    case LimitingBound::Monotone: return "monotone";
    case LimitingBound::Representable: return "representable";
    case LimitingBound::Convergence: return "convergence";
  }
  return "?";
}

double bound_monotone(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("bound_monotone requires 0 < alpha < 1, got " + std::to_string(alpha));
  }
  return gamma_fn(alpha + 1.0);
}

double bound_representable(double alpha, double rho, int kbar) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("bound_representable requires 0 < alpha <= 1, got " + std::to_string(alpha));
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("bound_representable requires rho > 0");
  const double base = kbar * std::numbers::ln10 + std::log(alpha);
  if (!(base > 0.0)) {
    throw DomainError("bound_representable: kbar ln 10 + ln alpha <= 0 (alpha = " + std::to_string(alpha) + ")");
  }
  return std::pow(base, alpha) / rho;
}

AdmissibilityReport assess(double alpha, double gamma, double rho, int kbar) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("assess requires 0 <= alpha <= 1, got " + std::to_string(alpha));
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("assess requires rho > 0");
  AdmissibilityReport r;
  r.alpha = alpha;
  r.gamma = gamma;
  if (alpha == 0.0) {
    r.bound_monotone = 1.0;
    r.bound_representable = 1.0 / rho;
    r.mu = 1.0 / rho;
    r.limiting = LimitingBound::Convergence;
    r.admissible = gamma > 0.0 && gamma < r.mu;
    return r;
  }
  r.bound_monotone = alpha == 1.0 ? 1.0 : bound_monotone(alpha);
  r.bound_representable = bound_representable(alpha, rho, kbar);
  if (r.bound_monotone <= r.bound_representable) {
    r.mu = r.bound_monotone;
    r.limiting = LimitingBound::Monotone;
  } else {
    r.mu = r.bound_representable;
    r.limiting = LimitingBound::Representable;
  }
  r.admissible = gamma > 0.0 && gamma <= r.mu;
  return r;
}

AdmissibilityReport mu(double alpha, double rho, int kbar) {
  AdmissibilityReport r = assess(alpha, 1.0, rho, kbar);
  r.gamma = r.mu;
  r.admissible = alpha > 0.0;
  return r;
}

bool check_coeff_monotone(double alpha, double gamma, int r_max) {
  if (r_max < 1) throw DomainError("check_coeff_monotone requires r_max >= 1");
  if (!(alpha >= 0.0) || !(gamma > 0.0)) throw DomainError("check_coeff_monotone requires alpha >= 0, gamma > 0");
  // c_{r+1} / c_r = gamma Gamma(alpha r + 1) / Gamma(alpha r + alpha + 1)
  const double lg = std::log(gamma);
  for (int r = 0; r < r_max; ++r) {
    const double x = alpha * r + 1.0;
    const double log_ratio = lg + log_gamma(x) - log_gamma(x + alpha);
    if (log_ratio > 1e-13) return false;
  }
  return true;
}

}  // namespace mlc
