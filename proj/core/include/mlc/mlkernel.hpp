#pragma once

// Scalar Mittag-Leffler function E_{alpha,beta}(z) on the real line, the
// Gamma-function support it needs, and the walk-weighting coefficients
// gamma^r / Gamma(alpha r + beta).

#include <optional>
#include <string_view>

namespace mlc {

/// Decimal exponent of the largest representable double (N ~ 10^308).
inline constexpr int kDefaultKbar = 308;

/// Default relative tolerance for scalar evaluations.
inline constexpr double kDefaultScalarTol = 1e-13;

/// Parameters of the scaled Mittag-Leffler function E_{alpha,beta}(gamma z).
struct MLParams {
  double alpha = 1.0;  ///< exponent scale, >= 0
  double beta = 1.0;   ///< offset, > 0
  double gamma = 1.0;  ///< walk down-weighting, > 0

  /// Throws DomainError unless alpha >= 0, beta > 0, gamma > 0 (all finite).
  void validate() const;

  friend bool operator==(const MLParams&, const MLParams&) = default;
};

/// The (alpha, beta) pairs for which E_{alpha,beta} has an elementary form.
struct ClosedForm {
  enum class Kind { Resolvent, Exponential, ErrorFn, CoshSqrt, SinhcSqrt, QuarterCosCosh, PhiK };

  Kind kind;
  int k = 0;  ///< only meaningful for PhiK (beta = k >= 2)

  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

std::string_view to_string(ClosedForm::Kind kind);

/// Euler Gamma function. Throws PoleError at 0, -1, -2, ... and OverflowError
/// when Gamma(x) exceeds the double range (x > ~171.62).
double gamma_fn(double x);

/// 1 / Gamma(x); zero at the poles, never throws for finite x.
double rgamma(double x);

/// ln|Gamma(x)|, reentrant.
double log_gamma(double x);

/// Series coefficient gamma^r / Gamma(alpha r + beta). Throws OverflowError
/// when the coefficient is not representable.
double ml_coeff(int r, const MLParams& p);

/// ln of ml_coeff, usable far past the point where the coefficient over- or
/// underflows.
double log_ml_coeff(int r, const MLParams& p);

/// Matching Table-style closed form for (alpha, beta), compared within 1e-12.
std::optional<ClosedForm> closed_form_lookup(double alpha, double beta);

/// Evaluates a closed form at z. Resolvent requires |z| < 1.
double evaluate_closed_form(ClosedForm form, double z);

/// |z| up to which the Taylor series is the primary branch:
/// max(1, (kbar ln 10 alpha)^alpha) / 2.
double ml_switch_point(double alpha, int kbar = kDefaultKbar);

enum class MLBranch { ClosedForm, Resolvent, Series, Asymptotic, NegativeAxisIntegral };

std::string_view to_string(MLBranch branch);

struct MLEvaluation {
  double value = 0.0;
  MLBranch branch = MLBranch::Series;
  double error_estimate = 0.0;  ///< relative
};

/// Full evaluator. Dispatch order: z = 0, closed form (unless disabled),
/// alpha = 0 resolvent, Taylor series for |z| <= switch point, asymptotic
/// expansion (z > 0) or negative-axis integral (z < 0, 0 < alpha < 1,
/// beta = 1), with the series as fallback. Overflow yields +inf.
///
/// Throws DomainError for invalid parameters or alpha = 0 with |z| >= 1 and
/// ConvergenceError when no branch reaches `tol`.
MLEvaluation ml_evaluate(double z, double alpha, double beta = 1.0, double tol = kDefaultScalarTol,
                         bool allow_closed_form = true);

/// E_{alpha,beta}(z). `p.gamma` is not applied: callers fold it into z.
double ml_scalar(double z, const MLParams& p, double tol = kDefaultScalarTol);
double ml_scalar(double z, double alpha, double beta = 1.0, double tol = kDefaultScalarTol);

// Individual branches, exposed for cross-checking.

/// Taylor series in extended precision with a cancellation-aware error
/// estimate. Throws ConvergenceError if the estimate exceeds `tol`.
MLEvaluation ml_series(double z, double alpha, double beta, double tol = kDefaultScalarTol);

/// Large-|z| expansion with `terms` algebraic corrections (0 < alpha < 2).
/// For z > 0 includes the exponential leading term; for z < 0 only the
/// algebraic tail. The error estimate is the first omitted term.
MLEvaluation ml_asymptotic(double z, double alpha, double beta, int terms = 4);

/// E_alpha(-x) for x > 0, 0 < alpha < 1, beta = 1, from its Laplace-type
/// integral representation.
MLEvaluation ml_negative_integral(double x, double alpha, double tol = kDefaultScalarTol);

}  // namespace mlc
