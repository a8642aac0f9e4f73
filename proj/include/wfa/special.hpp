#pragma once

#include <cstddef>

namespace wfa::special {

// log Gamma(x) for x > 0, Lanczos approximation (g=7, n=9). Thread-safe,
// unlike glibc's lgamma which writes the global signgam.
double log_gamma(double x);

// Standard normal density and CDF. norm_cdf is accurate to < 1e-15 absolute.
double norm_pdf(double x);
double norm_cdf(double x);

// Inverse standard normal CDF on (0,1). Acklam's rational approximation
// polished with Halley steps; roundtrip |norm_cdf(q)-u| is machine-level.
double norm_quantile(double u);

// Lower regularized incomplete gamma P(s,x), s > 0, x >= 0.
// Series for x < s+1, continued fraction otherwise.
double reg_inc_gamma(double s, double x);

// log of the upper tail Q(s,x) = 1 - P(s,x). Stays finite where Q itself
// underflows (needed for truncated laws with support far in the tail).
double log_gamma_q(double s, double x);

// Regularized incomplete beta I_x(a,b), continued fraction with the
// standard symmetry switch at x = (a+1)/(a+b+2).
double reg_inc_beta(double x, double a, double b);

// log of the beta tail 1 - I_x(a,b) = I_{1-x}(b,a). `one_minus_x` is passed
// directly so callers can form it without cancellation.
double log_beta_tail_from_y(double one_minus_x, double a, double b);

// Chi-squared distribution with real (possibly fractional) df > 0.
double chi_squared_pdf(double x, double df);
double chi_squared_cdf(double x, double df);
double chi_squared_quantile(double u, double df);

}  // namespace wfa::special
