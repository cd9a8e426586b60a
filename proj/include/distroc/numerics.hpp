#pragma once

#include <functional>

namespace distroc {

// Standard normal density, distribution and quantile functions.
double std_normal_pdf(double x);
double std_normal_cdf(double x);

// Inverse of std_normal_cdf. Throws DomainError unless 0 < p < 1.
double std_normal_quantile(double p);

// log(p / (1 - p)); throws DomainError at p <= 0 or p >= 1.
double logit(double p);
double inv_logit(double x);

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-8;
  int max_subdivisions = 200;
  // Abscissae are clamped to [clamp, 1 - clamp] before f is evaluated.
  double clamp = 1e-12;
};

// Globally adaptive 15-point Gauss-Kronrod integration of f over (0, 1).
// The panel with the largest error estimate is bisected until the summed
// estimate drops below abs_tol. Throws QuadratureError (carrying the best
// estimate) if max_subdivisions panels are not enough.
QuadratureResult integrate_unit_interval(const std::function<double(double)>& f,
                                         const QuadratureOptions& options = {});

}  // namespace distroc
