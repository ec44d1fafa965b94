#include "mlc/mlkernel.hpp"

#include <cmath>
#include <limits>
#include <math.h>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "mlc/error.hpp"

namespace mlc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr long double kEpsLd = std::numeric_limits<long double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr long double kPiLd = std::numbers::pi_v<long double>;

// Gamma(x) overflows a double for x beyond this point.
constexpr double kGammaOverflow = 171.62437695630272;

const double kLogDblMax = std::log(std::numeric_limits<double>::max());

constexpr std::size_t kSeriesTermCap = 5'000'000;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

bool is_half_integer(double x) {
  const double twice = 2.0 * x;
  return std::abs(x) < 200.0 && twice == std::floor(twice) && std::fmod(std::abs(twice), 2.0) == 1.0;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

// sin(pi x) with exact argument reduction.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r <= 0.25) return std::sin(kPi * r);
  if (r <= 0.75) return std::cos(kPi * (r - 0.5));
  if (r <= 1.25) return -std::sin(kPi * (r - 1.0));
  if (r <= 1.75) return -std::cos(kPi * (r - 1.5));
  return std::sin(kPi * (r - 2.0));
}

// Gamma(m + 1/2) by the recurrence from Gamma(1/2) = sqrt(pi).
double half_integer_gamma(double x) {
  long double g = std::sqrt(kPiLd);
  if (x > 0.0) {
    for (double a = 0.5; a < x; a += 1.0) g *= a;
  } else {
    for (double a = 0.5; a > x; a -= 1.0) g /= (a - 1.0);
  }
  return static_cast<double>(g);
}

long double log_gamma_ld(long double x) {
  int sign = 0;
  return ::lgammal_r(x, &sign);
}

void check_order(double alpha, double beta) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw DomainError("alpha must be finite and >= 0, got " + std::to_string(alpha));
  }
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw DomainError("beta must be finite and > 0, got " + std::to_string(beta));
  }
}

// exp(x^2) erfc(x) for x >= 26 (asymptotic, relative error < 1e-16 there).
long double erfcx_large(long double x) {
  const long double x2 = x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int n = 1; n < 12; ++n) {
    term *= -(2.0L * n - 1.0L) / (2.0L * x2);
    sum += term;
  }
  return sum / (x * std::sqrt(kPiLd));
}

double error_fn_form(double z) {
  if (z >= 0.0) {
    const long double z2 = static_cast<long double>(z) * z;
    return static_cast<double>(std::exp(z2) * static_cast<long double>(std::erfc(-z)));
  }
  const long double x = -static_cast<long double>(z);
  if (x >= 26.0L) return static_cast<double>(erfcx_large(x));
  return static_cast<double>(std::exp(x * x) * static_cast<long double>(std::erfc(static_cast<double>(x))));
}

double phi_form(int k, double z) {
  if (z >= 0.0 || z >= -2.0) {
    if (z <= 2.0) {
      // Taylor series sum_r z^r / (r + k - 1)!
      long double term = 1.0L;
      for (int j = 2; j <= k - 1; ++j) term /= j;
      long double sum = term;
      for (int r = 1; r < 10000; ++r) {
        term *= static_cast<long double>(z) / (r + k - 1);
        sum += term;
        if (std::abs(term) <= kEpsLd * std::abs(sum)) break;
      }
      return static_cast<double>(sum);
    }
  }
  const long double zl = z;
  long double poly = 0.0L;
  long double term = 1.0L;
  for (int r = 0; r <= k - 2; ++r) {
    if (r > 0) term *= zl / r;
    poly += term;
  }
  return static_cast<double>(std::pow(zl, 1 - k) * (std::exp(zl) - poly));
}

struct NegativeAxisQuadrature {
  boost::math::quadrature::tanh_sinh<double> head;
  boost::math::quadrature::exp_sinh<double> tail;
};

NegativeAxisQuadrature& negative_axis_quadrature() {
  thread_local NegativeAxisQuadrature q;
  return q;
}

}  // namespace

void MLParams::validate() const {
  check_order(alpha, beta);
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw DomainError("gamma must be finite and > 0, got " + std::to_string(gamma));
  }
}

std::string_view to_string(ClosedForm::Kind kind) {
  switch (kind) {
    case ClosedForm::Kind::Resolvent: return "Resolvent";
    case ClosedForm::Kind::Exponential: return "Exponential";
    case ClosedForm::Kind::ErrorFn: return "ErrorFn";
    case ClosedForm::Kind::CoshSqrt: return "CoshSqrt";
    case ClosedForm::Kind::SinhcSqrt: return "SinhcSqrt";
    case ClosedForm::Kind::QuarterCosCosh: return "QuarterCosCosh";
    case ClosedForm::Kind::PhiK: return "PhiK";
  }
  return "?";
}

std::string_view to_string(MLBranch branch) {
  switch (branch) {
    case MLBranch::ClosedForm: return "closed-form";
    case MLBranch::Resolvent: return "resolvent";
    case MLBranch::Series: return "series";
    case MLBranch::Asymptotic: return "asymptotic";
    case MLBranch::NegativeAxisIntegral: return "negative-axis-integral";
  }
  return "?";
}

double gamma_fn(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma_fn: non-finite argument");
  if (is_nonpositive_integer(x)) throw PoleError("gamma_fn: pole at " + std::to_string(x));
  if (x > kGammaOverflow) throw OverflowError("gamma_fn: Gamma(" + std::to_string(x) + ") overflows");
  if (is_half_integer(x)) return half_integer_gamma(x);
  if (x > 0.0) return std::tgamma(x);
  // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
  const double s = sin_pi(x);
  if (1.0 - x > kGammaOverflow) {
    const double sign = s < 0.0 ? -1.0 : 1.0;
    return sign * std::exp(std::log(kPi) - std::log(std::abs(s)) - log_gamma(1.0 - x));
  }
  return kPi / (s * std::tgamma(1.0 - x));
}

double rgamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > kGammaOverflow) return std::exp(-log_gamma(x));
  if (x < 0.0 && 1.0 - x > kGammaOverflow) {
    // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi, which may overflow.
    const double s = sin_pi(x);
    return s * std::exp(log_gamma(1.0 - x) - std::log(kPi));
  }
  return 1.0 / gamma_fn(x);
}

double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double log_ml_coeff(int r, const MLParams& p) {
  p.validate();
  if (r < 0) throw DomainError("ml_coeff: r must be >= 0");
  const long double a = static_cast<long double>(p.alpha) * r + p.beta;
  return static_cast<double>(r * std::log(static_cast<long double>(p.gamma)) - log_gamma_ld(a));
}

double ml_coeff(int r, const MLParams& p) {
  const double lc = log_ml_coeff(r, p);
  if (lc > kLogDblMax) {
    throw OverflowError("ml_coeff: gamma^r / Gamma(alpha r + beta) overflows at r = " + std::to_string(r) +
                        " (gamma = " + std::to_string(p.gamma) + ")");
  }
  const double a = p.alpha * r + p.beta;
  if (a <= kGammaOverflow) {
    const double pw = std::pow(p.gamma, r);
    if (std::isfinite(pw) && pw > 0.0) return pw / gamma_fn(a);
  }
  const long double a_ld = static_cast<long double>(p.alpha) * r + p.beta;
  return static_cast<double>(std::exp(r * std::log(static_cast<long double>(p.gamma)) - log_gamma_ld(a_ld)));
}

std::optional<ClosedForm> closed_form_lookup(double alpha, double beta) {
  using K = ClosedForm::Kind;
  if (near(beta, 1.0)) {
    if (near(alpha, 0.0)) return ClosedForm{K::Resolvent};
    if (near(alpha, 1.0)) return ClosedForm{K::Exponential};
    if (near(alpha, 0.5)) return ClosedForm{K::ErrorFn};
    if (near(alpha, 2.0)) return ClosedForm{K::CoshSqrt};
    if (near(alpha, 4.0)) return ClosedForm{K::QuarterCosCosh};
    return std::nullopt;
  }
  if (near(alpha, 2.0) && near(beta, 2.0)) return ClosedForm{K::SinhcSqrt};
  if (near(alpha, 1.0)) {
    const double k = std::round(beta);
    if (k >= 2.0 && near(beta, k) && k < 1e6) return ClosedForm{K::PhiK, static_cast<int>(k)};
  }
  return std::nullopt;
}

double evaluate_closed_form(ClosedForm form, double z) {
  using K = ClosedForm::Kind;
  switch (form.kind) {
    case K::Resolvent:
      if (!(std::abs(z) < 1.0)) {
        throw DomainError("resolvent branch requires |z| < 1, got z = " + std::to_string(z));
      }
      return 1.0 / (1.0 - z);
    case K::Exponential:
      return std::exp(z);
    case K::ErrorFn:
      return error_fn_form(z);
    case K::CoshSqrt:
      return z >= 0.0 ? std::cosh(std::sqrt(z)) : std::cos(std::sqrt(-z));
    case K::SinhcSqrt: {
      if (z == 0.0) return 1.0;
      if (z > 0.0) {
        const double s = std::sqrt(z);
        return std::sinh(s) / s;
      }
      const double s = std::sqrt(-z);
      return std::sin(s) / s;
    }
    case K::QuarterCosCosh: {
      if (z >= 0.0) {
        const double q = std::pow(z, 0.25);
        return 0.5 * (std::cos(q) + std::cosh(q));
      }
      // Fourth root of a negative number: a (1 + i) with a = |z|^{1/4} / sqrt(2).
      const double a = std::pow(-z, 0.25) / std::numbers::sqrt2;
      return std::cos(a) * std::cosh(a);
    }
    case K::PhiK:
      if (form.k < 2) throw DomainError("PhiK requires k >= 2");
      return phi_form(form.k, z);
  }
  throw DomainError("unknown closed form");
}

double ml_switch_point(double alpha, int kbar) {
  if (alpha <= 0.0) return 0.5;
  return 0.5 * std::max(1.0, std::pow(kbar * std::numbers::ln10 * alpha, alpha));
}

MLEvaluation ml_series(double z, double alpha, double beta, double tol) {
  check_order(alpha, beta);
  tol = std::max(tol, 4.0 * kEps);
  if (z == 0.0) return {rgamma(beta), MLBranch::Series, 0.0};
  if (alpha == 0.0 && !(std::abs(z) < 1.0)) {
    throw DomainError("series for alpha = 0 requires |z| < 1");
  }

  const bool negative = z < 0.0;
  const long double log_abs_z = std::log(std::abs(static_cast<long double>(z)));

  // Neumaier-compensated sum in extended precision.
  long double sum = 0.0L;
  long double compensation = 0.0L;
  long double abs_sum = 0.0L;
  long double rounding = 0.0L;
  long double prev_mag = std::numeric_limits<long double>::infinity();
  long double tail = 0.0L;
  bool converged = false;

  for (std::size_t r = 0; r < kSeriesTermCap; ++r) {
    const long double a = static_cast<long double>(alpha) * r + beta;
    const long double lg = log_gamma_ld(a);
    const long double log_mag = r * log_abs_z - lg;
    const long double mag = std::exp(log_mag);
    if (std::isinf(mag)) {
      if (!negative) return {std::numeric_limits<double>::infinity(), MLBranch::Series, 0.0};
      throw ConvergenceError("ml_series: terms exceed extended range for z = " + std::to_string(z));
    }
    const long double term = (negative && (r & 1U)) ? -mag : mag;

    const long double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
    abs_sum += mag;
    rounding += mag * (std::abs(r * log_abs_z) + std::abs(lg) + 4.0L) * kEpsLd;

    if (r > 0 && mag < prev_mag) {
      const long double q = mag / prev_mag;
      tail = mag * q / (1.0L - q);
      const long double total = std::abs(sum + compensation);
      if (tail <= 0.25L * tol * total || mag == 0.0L) {
        converged = true;
        break;
      }
    }
    prev_mag = mag;
  }
  if (!converged) throw ConvergenceError("ml_series: term cap reached for z = " + std::to_string(z));

  const long double value = sum + compensation;
  const long double err =
      value == 0.0L ? std::numeric_limits<long double>::infinity()
                    : (rounding + tail + 4.0L * kEpsLd * abs_sum) / std::abs(value);
  if (err > tol) {
    throw ConvergenceError("ml_series: cancellation limits accuracy to " + std::to_string(static_cast<double>(err)) +
                           " at z = " + std::to_string(z) + ", alpha = " + std::to_string(alpha));
  }
  return {static_cast<double>(value), MLBranch::Series, static_cast<double>(err)};
}

MLEvaluation ml_asymptotic(double z, double alpha, double beta, int terms) {
  check_order(alpha, beta);
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("ml_asymptotic requires 0 < alpha < 2");
  if (z == 0.0) throw DomainError("ml_asymptotic requires z != 0");

  const long double zl = z;
  long double algebraic = 0.0L;
  long double power = 1.0L;
  for (int k = 1; k <= terms; ++k) {
    power /= zl;
    algebraic += power * rgamma(beta - alpha * k);
  }
  // First omitted term; skip past a pole of Gamma so the estimate is not
  // accidentally zero.
  long double omitted = 0.0L;
  {
    long double pw = power;
    for (int k = terms + 1; k <= terms + 3 && omitted == 0.0L; ++k) {
      pw /= zl;
      omitted = std::abs(pw * rgamma(beta - alpha * k));
    }
  }

  long double value = -algebraic;
  if (z > 0.0) {
    const long double lead_log =
        -std::log(static_cast<long double>(alpha)) + ((1.0L - beta) / alpha) * std::log(zl) + std::pow(zl, 1.0L / alpha);
    if (lead_log > kLogDblMax + 1.0) {
      return {std::numeric_limits<double>::infinity(), MLBranch::Asymptotic, 0.0};
    }
    value += std::exp(lead_log);
    omitted += std::abs(value) * std::abs(lead_log) * kEpsLd;
  }
  const double err = value == 0.0L ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(omitted / std::abs(value));
  return {static_cast<double>(value), MLBranch::Asymptotic, err};
}

MLEvaluation ml_negative_integral(double x, double alpha, double tol) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ml_negative_integral requires 0 < alpha < 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("ml_negative_integral requires finite x > 0");
  tol = std::max(tol, 8.0 * kEps);

  // E_alpha(-x) = int_0^inf exp(-u) k(u) du with
  // k(u) = sin(alpha pi)/pi * x u^{alpha-1} / (u^{2 alpha} + 2 x u^alpha cos(alpha pi) + x^2),
  // the Laplace form rescaled so the exponential decays on a unit scale.
  const double s = std::sin(alpha * kPi) / kPi;
  const double c = std::cos(alpha * kPi);
  auto integrand = [=](double u) -> double {
    if (u <= 0.0) return 0.0;
    const double decay = std::exp(-u);
    if (decay == 0.0) return 0.0;
    const double ua = std::pow(u, alpha);
    return decay * s * x * (ua / u) / (ua * ua + 2.0 * x * ua * c + x * x);
  };
  // Past alpha = 1/2 the denominator dips near u^alpha = -x cos(alpha pi);
  // put a breakpoint there when it is not already deep in the decay.
  double split = 1.0;
  if (alpha > 0.5) split = std::clamp(std::pow(-c * x, 1.0 / alpha), 1e-3, 600.0);

  auto& quad = negative_axis_quadrature();
  double err_head = 0.0;
  double err_tail = 0.0;
  double head = 0.0;
  double tail = 0.0;
  try {
    head = quad.head.integrate(integrand, 0.0, split, tol * 0.1, &err_head);
    tail = quad.tail.integrate(integrand, split, std::numeric_limits<double>::infinity(), tol * 0.1, &err_tail);
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("ml_negative_integral: quadrature failed: ") + e.what());
  }
  const double value = head + tail;
  const double err = (std::abs(err_head) + std::abs(err_tail)) / value;
  if (!(err <= tol)) {
    throw ConvergenceError("ml_negative_integral: quadrature error " + std::to_string(err) + " at x = " +
                           std::to_string(x));
  }
  return {value, MLBranch::NegativeAxisIntegral, err};
}

MLEvaluation ml_evaluate(double z, double alpha, double beta, double tol, bool allow_closed_form) {
  check_order(alpha, beta);
  if (std::isnan(z)) throw DomainError("ml_evaluate: z is NaN");
  if (!(tol > 0.0)) throw DomainError("ml_evaluate: tol must be > 0");
  tol = std::max(tol, 4.0 * kEps);

  if (z == 0.0) return {rgamma(beta), MLBranch::ClosedForm, 0.0};
  if (allow_closed_form) {
    if (auto form = closed_form_lookup(alpha, beta)) {
      return {evaluate_closed_form(*form, z), MLBranch::ClosedForm, kEps};
    }
  }
  if (alpha == 0.0) {
    if (!(std::abs(z) < 1.0)) {
      throw DomainError("alpha = 0 requires |z| < 1, got z = " + std::to_string(z));
    }
    return {rgamma(beta) / (1.0 - z), MLBranch::Resolvent, kEps};
  }
  if (std::isinf(z)) {
    if (z > 0.0) return {std::numeric_limits<double>::infinity(), MLBranch::Asymptotic, 0.0};
    throw DomainError("ml_evaluate: z = -inf");
  }

  const double zs = ml_switch_point(alpha);
  const double x = std::abs(z);

  if (z > 0.0) {
    if (x <= zs) return ml_series(z, alpha, beta, tol);
    if (alpha < 2.0) {
      const MLEvaluation asym = ml_asymptotic(z, alpha, beta);
      if (asym.error_estimate <= tol) return asym;
    }
    return ml_series(z, alpha, beta, tol);
  }

  if (alpha < 1.0 && beta == 1.0) {
    if (x <= zs) {
      try {
        return ml_series(z, alpha, beta, tol);
      } catch (const ConvergenceError&) {
        // cancellation; the integral below is always well conditioned
      }
    } else {
      const MLEvaluation asym = ml_asymptotic(z, alpha, beta);
      if (asym.error_estimate <= tol) return asym;
    }
    return ml_negative_integral(x, alpha, tol);
  }
  if (alpha < 2.0 && x > zs) {
    const MLEvaluation asym = ml_asymptotic(z, alpha, beta);
    if (asym.error_estimate <= tol) return asym;
  }
  return ml_series(z, alpha, beta, tol);
}

double ml_scalar(double z, double alpha, double beta, double tol) {
  return ml_evaluate(z, alpha, beta, tol).value;
}

double ml_scalar(double z, const MLParams& p, double tol) {
  p.validate();
  return ml_evaluate(z, p.alpha, p.beta, tol).value;
}

}  // namespace mlc
