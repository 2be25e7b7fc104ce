#pragma once

#include <functional>

namespace rkhs {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_subdivisions = 60;

  // Throws DomainError when a field is out of range.
  void validate() const;
};

// Result of integrating exp(log_f) where the answer is carried in log form so
// that integrals far outside the double range (or far below it) stay usable.
struct LogIntegral {
  double log_value;
  double rel_error;
  int subdivisions;
};

// Adaptive Gauss-Kronrod (7/15) integration of exp(log_f(x) - log_scale) over
// [lo, hi], split into `initial_panels` equal panels before bisection starts.
// Throws ConvergenceError if the error budget is not met after
// cfg.max_subdivisions bisections.
LogIntegral integrate_exp(const std::function<double(double)>& log_f, double lo,
                          double hi, double log_scale,
                          const QuadratureConfig& cfg, int initial_panels = 1);

// Integrates exp(log_f) over [lower, upper] (either may be infinite) for a
// unimodal log-integrand with known mode and characteristic width. The range
// is truncated where log_f falls log(cfg.abs_tol) below its peak.
LogIntegral integrate_unimodal(const std::function<double(double)>& log_f,
                               double mode, double width, double lower,
                               double upper, const QuadratureConfig& cfg);

}  // namespace rkhs
