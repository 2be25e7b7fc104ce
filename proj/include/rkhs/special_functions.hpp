#pragma once

#include "rkhs/quadrature.hpp"

namespace rkhs::special {

double gamma(double x);
double log_gamma(double x);

// K_nu(r) from the integral representation int_0^inf exp(-r cosh t) cosh(nu t) dt.
double bessel_k(double nu, double r, const QuadratureConfig& cfg = {});
// log(e^r K_nu(r)); finite far beyond the range where K_nu underflows.
double log_bessel_k_scaled(double nu, double r, const QuadratureConfig& cfg = {});

// int_0^inf t^(beta - d/2 - 1) exp(-s^2/(4t) - t) dt
double laplace_type_integral(double beta, int d, double s, const QuadratureConfig& cfg = {});
// log(e^s * laplace_type_integral(beta, d, s))
double log_laplace_type_integral_scaled(double beta, int d, double s,
                                        const QuadratureConfig& cfg = {});

// sin(t/2)/(t/2), signed. Exact zero at t = 2*pi*k (k != 0) up to rounding.
double sinc_half(double t);
// sinc_half(t)^p for even p >= 2.
double sinc_half_pow(double t, int p);

}  // namespace rkhs::special
