#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mlc/error.hpp"
#include "mlc/params.hpp"
#include "ml_reference.inc"

namespace mlc {
namespace {

TEST(BoundMonotone, Examples) {
  EXPECT_NEAR(bound_monotone(0.5), test::kGamma1p5, 1e-15);
  EXPECT_NEAR(bound_monotone(0.8), test::kGamma1p8, 1e-13);
  EXPECT_NEAR(bound_monotone(1.0 - 1e-9), 1.0, 1e-8);
  EXPECT_THROW(bound_monotone(0.0), DomainError);
  EXPECT_THROW(bound_monotone(1.0), DomainError);
}

TEST(BoundRepresentable, Examples) {
  EXPECT_NEAR(bound_representable(1.0, 1.0, 308), test::kKbarLn10, 1e-11);
  EXPECT_NEAR(bound_representable(0.5, 7.19, 308), test::kRepresentHalfDolphins, 1e-12);
  EXPECT_NEAR(bound_representable(1.0, test::kKbarLn10, 308), 1.0, 1e-15);
  EXPECT_THROW(bound_representable(1e-310, 1.0, 308), DomainError);
  EXPECT_THROW(bound_representable(0.5, 0.0, 308), DomainError);
}

TEST(Mu, Examples) {
  const AdmissibilityReport half = mu(0.5, 7.19);
  EXPECT_NEAR(half.mu, test::kGamma1p5, 1e-15);
  EXPECT_EQ(half.limiting, LimitingBound::Monotone);
  EXPECT_NEAR(mu(0.999, 1.0).mu, test::kGamma1p999, 1e-13);
  EXPECT_EQ(mu(1.0, 1.0).mu, 1.0);
}

TEST(Mu, BoundaryRule) {
  for (double alpha : {0.1, 0.5, 0.9, 1.0}) {
    const double m = mu(alpha, 3.0).mu;
    EXPECT_TRUE(assess(alpha, m, 3.0).admissible) << alpha;
    EXPECT_FALSE(assess(alpha, std::nextafter(m, 2.0), 3.0).admissible) << alpha;
    EXPECT_FALSE(assess(alpha, m * (1 + 1e-9), 3.0).admissible) << alpha;
  }
}

TEST(Mu, AlphaZeroUsesStrictResolventBound) {
  const AdmissibilityReport r = mu(0.0, 4.0);
  EXPECT_EQ(r.mu, 0.25);
  EXPECT_EQ(r.limiting, LimitingBound::Convergence);
  EXPECT_FALSE(assess(0.0, 0.25, 4.0).admissible);
  EXPECT_TRUE(assess(0.0, 0.2499, 4.0).admissible);
}

TEST(Mu, LimitingBoundOnDolphinsScale) {
  // Gamma(alpha + 1) limits for moderate alpha; for very small alpha the
  // representability bound (709 + ln alpha)^alpha / rho drops below it.
  for (double alpha = 0.3; alpha < 1.0; alpha += 0.05) {
    EXPECT_EQ(mu(alpha, 7.19).limiting, LimitingBound::Monotone) << alpha;
  }
  EXPECT_EQ(mu(0.01, 7.19).limiting, LimitingBound::Representable);
  EXPECT_EQ(mu(0.5, 100.0).limiting, LimitingBound::Representable);
}

TEST(Mu, MonotoneInKbarAndRho) {
  for (double alpha : {0.05, 0.3, 0.7, 1.0}) {
    double prev = 0.0;
    for (int kbar : {10, 38, 100, 308, 4000}) {
      const double m = mu(alpha, 20.0, kbar).mu;
      EXPECT_GE(m, prev) << alpha << ' ' << kbar;
      prev = m;
    }
    prev = INFINITY;
    for (double rho : {0.5, 1.0, 7.19, 50.0, 1e4}) {
      const double m = mu(alpha, rho).mu;
      EXPECT_LE(m, prev) << alpha << ' ' << rho;
      prev = m;
    }
  }
}

TEST(Mu, IsMinimumOfBounds) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(0.001, 0.999), ur(0.1, 1e3);
  for (int k = 0; k < 500; ++k) {
    const double alpha = ua(rng), rho = ur(rng);
    const AdmissibilityReport r = mu(alpha, rho);
    EXPECT_EQ(r.mu, std::min(r.bound_monotone, r.bound_representable));
  }
}

TEST(CheckCoeffMonotone, Examples) {
  EXPECT_TRUE(check_coeff_monotone(0.5, 0.88, 200));
  EXPECT_FALSE(check_coeff_monotone(0.8, 1.0, 10));
  EXPECT_TRUE(check_coeff_monotone(1.0, 1.0, 200));
  EXPECT_THROW(check_coeff_monotone(0.5, 0.5, 0), DomainError);
}

TEST(CheckCoeffMonotone, LemmaHoldsBelowGammaBound) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(0.0, 1.0), uf(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    double alpha = ua(rng);
    if (alpha == 0.0) alpha = 0.5;
    const double gamma = std::max(uf(rng), 1e-6) * bound_monotone(alpha);
    EXPECT_TRUE(check_coeff_monotone(alpha, gamma, 500)) << alpha << ' ' << gamma;
  }
}

TEST(CheckCoeffMonotone, BoundIsTightAtFirstCoefficient) {
  for (int i = 1; i <= 19; ++i) {
    const double alpha = 0.05 * i;
    const double g = bound_monotone(alpha);
    EXPECT_TRUE(check_coeff_monotone(alpha, g, 500)) << alpha;
    EXPECT_FALSE(check_coeff_monotone(alpha, g * (1 + 1e-9), 500)) << alpha;
    EXPECT_FALSE(check_coeff_monotone(alpha, g * 1.5, 1)) << alpha;
  }
}

TEST(LimitingBound, Names) {
  EXPECT_EQ(to_string(LimitingBound::Monotone), "monotone");
  EXPECT_EQ(to_string(LimitingBound::Representable), "representable");
  EXPECT_EQ(to_string(LimitingBound::Convergence), "convergence");
}

}  // namespace
}  // namespace mlc
