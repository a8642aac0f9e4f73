// Independent oracles used by the unit and acceptance suites. Everything in
// this header deliberately avoids the library's quadrature and special
// function code paths: integration is adaptive Simpson, gamma values come
// from std::lgamma, and normal tails come from std::erfc.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb, double s,
                          double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double sl = (fa + 4.0 * flm + fm) * (m - a) / 6.0;
    double sr = (fm + 4.0 * frm + fb) * (b - m) / 6.0;
    double err = sl + sr - s;
    // second guard: panel estimates at the double round-off floor
    if (depth <= 0 || std::fabs(err) <= 15.0 * tol ||
        std::fabs(err) <= 4e-15 * (std::fabs(sl) + std::fabs(sr)))
        return sl + sr + err / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, sl, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, sr, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-11, int depth = 48) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double s = (fa + 4.0 * fm + fb) * (b - a) / 6.0;
    return simpson_rec(f, a, b, fa, fm, fb, s, tol, depth);
}

// rough magnitude of f over [a,b] from a fixed sample grid; tolerance
// scaling only, never a value
inline double sample_scale(const std::function<double(double)>& f, double a,
                           double b) {
    double m = 0.0;
    for (int k = 0; k <= 16; ++k)
        m = std::max(m, std::fabs(f(a + (b - a) * k / 16.0)));
    return m;
}

// chi-squared density from first principles (std::lgamma only)
inline double chi2_pdf(double x, double df) {
    if (x <= 0.0) return 0.0;
    double k = 0.5 * df;
    return std::exp((k - 1.0) * std::log(x) - 0.5 * x -
                    k * 0.693147180559945309 - std::lgamma(k));
}

inline double norm_pdf(double z) {
    return 0.398942280401432678 * std::exp(-0.5 * z * z);
}

inline double norm_upper_tail(double z) {  // 1 - Phi(z)
    return 0.5 * std::erfc(z / 1.41421356237309505);
}

// conditional moments of Z^2 given |Z| > lambda, by parts
inline double m1_cond(double lambda) {
    if (lambda == 0.0) return 1.0;
    return 1.0 + lambda * norm_pdf(lambda) / norm_upper_tail(lambda);
}
inline double m4_cond(double lambda) {
    if (lambda == 0.0) return 3.0;
    return 3.0 + (lambda * lambda * lambda + 3.0 * lambda) * norm_pdf(lambda) /
                     norm_upper_tail(lambda);
}

// orthonormal Haar analysis matrices used as transform oracles
inline std::vector<double> haar2_times(const std::vector<double>& y) {
    const double s = 1.0 / std::sqrt(2.0);
    return {s * y[0] - s * y[1], s * y[0] + s * y[1]};  // [W0, V0]
}

inline std::vector<double> haar4_times(const std::vector<double>& y) {
    const double s = 1.0 / std::sqrt(2.0);
    return {s * (y[0] - y[1]), s * (y[2] - y[3]),            // W1
            0.5 * (y[0] + y[1] - y[2] - y[3]),               // W0
            0.5 * (y[0] + y[1] + y[2] + y[3])};              // V0
}

// tiny deterministic generator for test data (xorshift-style)
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed ^ 0x9E3779B97F4A7C15ull) {
        next_u64();
    }
    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return ((next_u64() >> 11) + 0.5) * 0x1.0p-53; }
    double normal() {
        // Box-Muller; test-side only
        double u1 = uniform(), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586477 * u2);
    }
};

}  // namespace oracle
