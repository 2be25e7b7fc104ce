#include "rkhs/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rkhs/errors.hpp"

namespace rkhs::special {

namespace {

double log_cosh(double y) {
  y = std::abs(y);
  return y + std::log1p(std::exp(-2.0 * y)) - std::numbers::ln2;
}

}  // namespace

double gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("gamma requires x > 0, got " + std::to_string(x));
  }
  return std::tgamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
  }
  return std::lgamma(x);
}

double log_bessel_k_scaled(double nu, double r, const QuadratureConfig& cfg) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("bessel_k requires finite r > 0, got " + std::to_string(r));
  }
  if (!std::isfinite(nu)) {
    throw DomainError("bessel_k requires finite order");
  }
  nu = std::abs(nu);
  // exp(-r (cosh t - 1)) cosh(nu t), written with cosh t - 1 = 2 sinh^2(t/2)
  auto log_f = [nu, r](double t) {
    const double sh = std::sinh(0.5 * t);
    return -2.0 * r * sh * sh + log_cosh(nu * t);
  };

  // Mode: r sinh t = nu tanh(nu t). Interior only when nu^2 > r.
  double mode = 0.0;
  if (nu * nu > r) {
    double lo = 0.0;
    double hi = std::asinh(nu / r) + 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (-r * std::sinh(mid) + nu * std::tanh(nu * mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    mode = 0.5 * (lo + hi);
  }
  const double sech = 1.0 / std::cosh(nu * mode);
  const double curv = r * std::cosh(mode) - nu * nu * sech * sech;
  const double width = std::clamp(1.0 / std::sqrt(std::max(curv, 1e-12)), 1e-8, 8.0);

  const LogIntegral res = integrate_unimodal(log_f, mode, width, 0.0,
                                             std::numeric_limits<double>::infinity(), cfg);
  return res.log_value;
}

double bessel_k(double nu, double r, const QuadratureConfig& cfg) {
  return std::exp(log_bessel_k_scaled(nu, r, cfg) - r);
}

double log_laplace_type_integral_scaled(double beta, int d, double s,
                                        const QuadratureConfig& cfg) {
  if (!(beta > 0.0) || d < 1 || !(s >= 0.0) || !std::isfinite(s)) {
    throw DomainError("laplace_type_integral requires beta > 0, d >= 1, finite s >= 0");
  }
  const double nu = beta - 0.5 * d;
  if (s == 0.0) {
    if (!(nu > 0.0)) {
      throw DivergenceError("laplace_type_integral diverges at s = 0 unless beta > d/2 (beta=" +
                            std::to_string(beta) + ", d=" + std::to_string(d) + ")");
    }
    return std::lgamma(nu);
  }

  // Substitute t = w e^v with w the mode of the integrand in t. Then
  //   s^2/(4t) + t = s + w (e^{v/2} - kappa e^{-v/2})^2,  kappa = s/(2w),
  // so the e^{-s} factor comes out exactly and the rest is O(1) near v = 0.
  const double R = std::hypot(nu, s);
  const double w = nu >= 0.0 ? 0.5 * (nu + R) : 0.5 * s * s / (R - nu);
  const double one_minus_kappa = nu * (1.0 + nu / (R + s)) / (2.0 * w);
  const double kappa = 0.5 * s / w;
  const double log_w = std::log(w);
  auto log_f = [=](double v) {
    // sinh form keeps 1 - kappa accurate near the mode; the direct form keeps
    // a tiny kappa from cancelling out in the far left tail.
    const double q = v > -2.0 ? 2.0 * std::sinh(0.5 * v) + one_minus_kappa * std::exp(-0.5 * v)
                              : std::exp(0.5 * v) - kappa * std::exp(-0.5 * v);
    return nu * (log_w + v) - w * q * q;
  };
  const double curv = s * s / (4.0 * w) + w;
  const double width = std::min(1.0 / std::sqrt(curv), 8.0);
  const double inf = std::numeric_limits<double>::infinity();
  return integrate_unimodal(log_f, 0.0, width, -inf, inf, cfg).log_value;
}

double laplace_type_integral(double beta, int d, double s, const QuadratureConfig& cfg) {
  return std::exp(log_laplace_type_integral_scaled(beta, d, s, cfg) - s);
}

double sinc_half(double t) {
  const double a = std::abs(t);
  if (a < 1e-4) {
    return 1.0 - t * t / 24.0;
  }
  if (a < 1e6) {
    const double k = std::round(t / (2.0 * std::numbers::pi));
    if (k != 0.0 && std::abs(t - 2.0 * std::numbers::pi * k) <=
                        8.0 * std::numeric_limits<double>::epsilon() * a) {
      return 0.0;
    }
  }
  return std::sin(0.5 * t) / (0.5 * t);
}

double sinc_half_pow(double t, int p) {
  if (p < 2 || p % 2 != 0) {
    throw DomainError("sinc_half_pow requires an even power p >= 2, got " + std::to_string(p));
  }
  return std::pow(sinc_half(t), p);
}

}  // namespace rkhs::special
