#include "wfa/special.hpp"

#include <cmath>
#include <limits>

#include "wfa/errors.hpp"

namespace wfa::special {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr int kMaxIter = 500;

// Lanczos g=7, n=9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_series(double s, double x) {
    // P(s,x) by series; requires x < s+1.
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + s * std::log(x) - log_gamma(s));
    }
    throw NumericError("reg_inc_gamma: series did not converge");
}

// Continued fraction for Q(s,x)*Gamma(s)*exp(x)*x^{-s}; requires x >= s+1.
double gamma_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) return h;
    }
    throw NumericError("reg_inc_gamma: continued fraction did not converge");
}

// Lentz continued fraction for the incomplete beta.
double beta_cf(double x, double a, double b) {
    const double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) return h;
    }
    throw NumericError("reg_inc_beta: continued fraction did not converge");
}

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

// log of I_x(a,b) evaluated by the direct continued fraction; valid when
// x is on the CF-convergent side, x < (a+1)/(a+b+2).
double log_beta_inc_direct(double x, double a, double b) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    return a * std::log(x) + b * std::log1p(-x) - log_beta(a, b) -
           std::log(a) + std::log(beta_cf(x, a, b));
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw InvalidInputError("log_gamma: requires x > 0");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        const double pi = 3.14159265358979323846;
        return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
    }
    double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + i);
    double t = z + 7.5;
    return 0.9189385332046727417803297 /* log(sqrt(2 pi)) */
           + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double norm_pdf(double x) {
    return 0.3989422804014326779399461 * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double norm_quantile(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw InvalidInputError("norm_quantile: requires u in (0,1)");
    // Acklam's rational approximation.
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (u < plow) {
        double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - plow) {
        double q = u - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Two Halley polish steps against the high-accuracy CDF.
    for (int i = 0; i < 2; ++i) {
        double e = norm_cdf(x) - u;
        double p = norm_pdf(x);
        if (p <= 0.0) break;
        double t = e / p;
        x -= t / (1.0 + 0.5 * x * t);
    }
    return x;
}

double reg_inc_gamma(double s, double x) {
    if (!(s > 0.0)) throw InvalidInputError("reg_inc_gamma: requires s > 0");
    if (!(x >= 0.0)) throw InvalidInputError("reg_inc_gamma: requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return gamma_series(s, x);
    double logq = -x + s * std::log(x) - log_gamma(s) + std::log(gamma_cf(s, x));
    return 1.0 - std::exp(logq);
}

double log_gamma_q(double s, double x) {
    if (!(s > 0.0)) throw InvalidInputError("log_gamma_q: requires s > 0");
    if (!(x >= 0.0)) throw InvalidInputError("log_gamma_q: requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) {
        // Q is not small on this side; 1 - P loses nothing.
        return std::log1p(-gamma_series(s, x));
    }
    return -x + s * std::log(x) - log_gamma(s) + std::log(gamma_cf(s, x));
}

double reg_inc_beta(double x, double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw InvalidInputError("reg_inc_beta: requires a, b > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw InvalidInputError("reg_inc_beta: requires x in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(x, a, b) / a;
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double log_beta_tail_from_y(double y, double a, double b) {
    if (!(a > 0.0 && b > 0.0))
        throw InvalidInputError("log_beta_tail: requires a, b > 0");
    if (!(y >= 0.0 && y <= 1.0))
        throw InvalidInputError("log_beta_tail: requires 1-x in [0,1]");
    if (y == 0.0) return -std::numeric_limits<double>::infinity();
    if (y == 1.0) return 0.0;
    // 1 - I_{1-y}(a,b) = I_y(b,a)
    if (y < (b + 1.0) / (a + b + 2.0)) return log_beta_inc_direct(y, b, a);
    return std::log1p(-std::exp(log_beta_inc_direct(1.0 - y, a, b)));
}

double chi_squared_pdf(double x, double df) {
    if (!(df > 0.0)) throw InvalidInputError("chi_squared_pdf: requires df > 0");
    if (x < 0.0) return 0.0;
    double k = 0.5 * df;
    if (x == 0.0) {
        if (df > 2.0) return 0.0;
        if (df == 2.0) return 0.5;
        return std::numeric_limits<double>::infinity();
    }
    return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * 0.6931471805599453094 -
                    log_gamma(k));
}

double chi_squared_cdf(double x, double df) {
    if (!(df > 0.0)) throw InvalidInputError("chi_squared_cdf: requires df > 0");
    if (x <= 0.0) return 0.0;
    return reg_inc_gamma(0.5 * df, 0.5 * x);
}

double chi_squared_quantile(double u, double df) {
    if (!(df > 0.0))
        throw InvalidInputError("chi_squared_quantile: requires df > 0");
    if (!(u > 0.0 && u < 1.0))
        throw InvalidInputError("chi_squared_quantile: requires u in (0,1)");
    // Wilson-Hilferty start, then safeguarded Newton.
    double z = norm_quantile(u);
    double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    double x = df * t * t * t;
    if (!(x > 0.0)) x = 0.5 * df;
    double lo = 0.0, hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
        double f = chi_squared_cdf(x, df) - u;
        if (f > 0.0) hi = x; else lo = x;
        if (std::fabs(f) < 1e-13) return x;
        double p = chi_squared_pdf(x, df);
        double step = (p > 0.0) ? f / p : 0.0;
        double xn = x - step;
        if (!(xn > lo && (xn < hi))) {
            xn = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * x + 1.0;
        }
        if (xn == x) return x;
        x = xn;
    }
    throw NumericError("chi_squared_quantile: did not converge");
}

}  // namespace wfa::special
