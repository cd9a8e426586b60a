#include <gtest/gtest.h>

#include <cmath>

#include "distroc/error.hpp"
#include "distroc/numerics.hpp"
#include "distroc/rng.hpp"

using namespace distroc;

TEST(NormalCdf, ReferenceValues) {
  EXPECT_DOUBLE_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(1.959964), 0.975, 1e-6);
  EXPECT_LT(std_normal_cdf(-8.0), 1e-14);
  EXPECT_GT(std_normal_cdf(-8.0), 0.0);
  // Phi(-8) = 6.22096057427178e-16 (mpmath, 30 digits)
  EXPECT_NEAR(std_normal_cdf(-8.0) / 6.22096057427178e-16, 1.0, 1e-12);
}

TEST(NormalCdf, MonotoneOnDenseGrid) {
  double prev = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = -10.0 + 20.0 * i / 10000.0;
    const double v = std_normal_cdf(x);
    ASSERT_GE(v, prev) << x;
    prev = v;
  }
}

TEST(NormalPdf, Peak) { EXPECT_NEAR(std_normal_pdf(0.0), 0.3989422804014327, 1e-16); }

TEST(NormalQuantile, ReferenceValues) {
  EXPECT_DOUBLE_EQ(std_normal_quantile(0.5), 0.0);
  EXPECT_NEAR(std_normal_quantile(0.975), 1.959964, 1e-5);
  EXPECT_NEAR(std_normal_quantile(0.7), 0.524401, 1e-5);
  // scipy.stats.norm.ppf(1e-10) = -6.361340902404056
  EXPECT_NEAR(std_normal_quantile(1e-10), -6.361340902404056, 1e-9);
}

TEST(NormalQuantile, RoundTrip) {
  for (int e = -8; e <= -1; ++e) {
    for (double m : {1.0, 2.5, 5.0}) {
      const double p = m * std::pow(10.0, e);
      EXPECT_NEAR(std_normal_cdf(std_normal_quantile(p)), p, 1e-10 * std::max(1.0, p / 1e-2)) << p;
      EXPECT_NEAR(std_normal_cdf(std_normal_quantile(1.0 - p)), 1.0 - p, 1e-10) << p;
    }
  }
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    EXPECT_NEAR(std_normal_cdf(std_normal_quantile(p)), p, 1e-10) << p;
  }
}

TEST(NormalQuantile, OutsideUnitIntervalThrows) {
  EXPECT_THROW(std_normal_quantile(0.0), DomainError);
  EXPECT_THROW(std_normal_quantile(1.0), DomainError);
  EXPECT_THROW(std_normal_quantile(-0.1), DomainError);
  EXPECT_THROW(std_normal_quantile(std::nan("")), DomainError);
}

TEST(Logit, Values) {
  EXPECT_DOUBLE_EQ(logit(0.5), 0.0);
  EXPECT_NEAR(logit(0.75), 1.0986122886681098, 1e-15);
  EXPECT_DOUBLE_EQ(inv_logit(0.0), 0.5);
  EXPECT_NEAR(inv_logit(logit(0.123)), 0.123, 1e-15);
  EXPECT_GT(inv_logit(-800.0), -1.0);
  EXPECT_EQ(inv_logit(800.0), 1.0);
  EXPECT_THROW(logit(0.0), DomainError);
  EXPECT_THROW(logit(1.0), DomainError);
}

TEST(Quadrature, Identity) {
  const auto r = integrate_unit_interval([](double t) { return t; });
  EXPECT_NEAR(r.value, 0.5, 1e-12);
}

TEST(Quadrature, PaperBinormalCurve) {
  const auto r = integrate_unit_interval(
      [](double t) { return std_normal_cdf(0.7817 + 1.2486 * std_normal_quantile(t)); });
  EXPECT_NEAR(r.value, 0.6875, 5e-4);
}

TEST(Quadrature, ClosedFormBinormal) {
  const auto r = integrate_unit_interval(
      [](double t) { return std_normal_cdf(1.0 + 1.0 * std_normal_quantile(t)); });
  EXPECT_NEAR(r.value, 0.760250, 1e-6);
  EXPECT_NEAR(r.value, std_normal_cdf(1.0 / std::sqrt(2.0)), 1e-8);
}

TEST(Quadrature, RandomBinormalAgainstClosedForm) {
  CounterRng rng(11);
  for (int i = 0; i < 100; ++i) {
    const double g1 = rng.uniform(-3.0, 3.0);
    const double g2 = rng.uniform(1e-3, 3.0);
    const auto r = integrate_unit_interval(
        [&](double t) { return std_normal_cdf(g1 + g2 * std_normal_quantile(t)); });
    EXPECT_NEAR(r.value, std_normal_cdf(g1 / std::sqrt(1.0 + g2 * g2)), 1e-6) << g1 << " " << g2;
  }
}

TEST(Quadrature, SubdivisionCapThrowsWithEstimate) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-15;
  opts.max_subdivisions = 2;
  try {
    integrate_unit_interval([](double t) { return std::sin(200.0 * t); }, opts);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
  }
}
