#include "wfa/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wfa/errors.hpp"
#include "wfa/quadrature.hpp"
#include "wfa/special.hpp"

namespace wfa::dist {

namespace {

constexpr double kLn2 = 0.6931471805599453094;
constexpr double kInf = std::numeric_limits<double>::infinity();

// log density of a chi-squared with real df `nu` truncated to [lo, inf),
// where log_tail = log Q(nu/2, lo/2) is the renormalizer.
double log_trunc_chisq_pdf(double x, double nu, double lo, double log_tail) {
    if (x < lo || x <= 0.0) return -kInf;
    double k = 0.5 * nu;
    return (k - 1.0) * std::log(x) - 0.5 * x - k * kLn2 - special::log_gamma(k) -
           log_tail;
}

// Conditional moments of a tail-restricted chi-squared via gamma-tail
// ratios: E[X^m | X > lo] = 2^m Gamma(k+m)/Gamma(k) Q(k+m, lo/2)/Q(k, lo/2).
// Used only for bracketing; the reported moments come from quadrature.
void tail_chisq_moments(double nu, double lo, double* m1, double* var) {
    double k = 0.5 * nu;
    double c = 0.5 * lo;
    double lq = special::log_gamma_q(k, c);
    double m1v = nu * std::exp(special::log_gamma_q(k + 1.0, c) - lq);
    double m2v = nu * (nu + 2.0) * std::exp(special::log_gamma_q(k + 2.0, c) - lq);
    *m1 = m1v;
    *var = std::max(m2v - m1v * m1v, 1e-12);
}

}  // namespace

double norm_cdf(double x) { return special::norm_cdf(x); }
double norm_quantile(double u) { return special::norm_quantile(u); }
double reg_inc_gamma(double s, double x) { return special::reg_inc_gamma(s, x); }
double reg_inc_beta(double x, double a, double b) {
    return special::reg_inc_beta(x, a, b);
}

double pi_nonzero(std::size_t n) {
    if (n < 2) throw InvalidInputError("pi_nonzero: requires n >= 2");
    double lambda = std::sqrt(2.0 * std::log(static_cast<double>(n)));
    return 2.0 * special::norm_cdf(-lambda);
}

double binomial_df(std::size_t treatments, std::size_t n, int l_t) {
    if (treatments == 0)
        throw InvalidInputError("binomial_df: requires at least one treatment");
    const int J = [&] {
        std::size_t m = n;
        int j = 0;
        while (m > 1) {
            if (m % 2 != 0)
                throw InvalidInputError("binomial_df: n must be a power of two");
            m /= 2;
            ++j;
        }
        return j;
    }();
    if (l_t < 1 || l_t > J)
        throw InvalidInputError("binomial_df: l_t out of range [1, J]");
    double n_t = static_cast<double>(n >> l_t);
    return static_cast<double>(treatments) * (static_cast<double>(n) - n_t) *
           pi_nonzero(n);
}

double trunc_m1_second_moment(double lambda) {
    if (!(lambda >= 0.0))
        throw InvalidInputError("trunc moment: lambda must be >= 0");
    if (lambda == 0.0) return 1.0;
    double tail = special::norm_cdf(-lambda);
    auto f = [](double z) { return z * z * special::norm_pdf(z); };
    auto r = quad::integrate(f, lambda, lambda + 42.0, quad::default_tolerance());
    return r.value / tail;
}

double trunc_m1_fourth_moment(double lambda) {
    if (!(lambda >= 0.0))
        throw InvalidInputError("trunc moment: lambda must be >= 0");
    if (lambda == 0.0) return 3.0;
    double tail = special::norm_cdf(-lambda);
    auto f = [](double z) { return z * z * z * z * special::norm_pdf(z); };
    auto r = quad::integrate(f, lambda, lambda + 42.0, quad::default_tolerance());
    return r.value / tail;
}

TruncChiSq::TruncChiSq(int dof, double lambda) : dof_(dof), lambda_(lambda) {
    if (dof < 1) throw InvalidInputError("TruncChiSq: requires M >= 1");
    if (!(lambda >= 0.0)) throw InvalidInputError("TruncChiSq: lambda must be >= 0");
    support_low_ = dof * lambda * lambda;
    log_norm_tail_ = special::log_gamma_q(0.5 * dof, 0.5 * support_low_);
}

double TruncChiSq::pdf(double x) const {
    if (!(x >= support_low_)) return 0.0;
    return std::exp(log_trunc_chisq_pdf(x, dof_, support_low_, log_norm_tail_));
}

double TruncChiSq::mgf(double t) const {
    if (t >= 0.5)
        throw InvalidInputError("trunc_chisq_mgf: diverges for t >= 1/2");
    if (t == 0.0) return 1.0;
    double rate = 0.5 - t;
    double k = 0.5 * dof_;
    double scale = std::max(1.0, std::exp(t * support_low_));
    double upper = std::max(support_low_, k / rate) +
                   (50.0 + 12.0 * std::sqrt(k)) / rate;
    auto f = [this, t](double x) { return std::exp(t * x) * pdf(x); };
    auto r = quad::integrate(f, support_low_, upper,
                             quad::default_tolerance() * scale);
    return r.value;
}

ChiSquaredLaw::ChiSquaredLaw(double df) : df_(df) {
    if (!(df > 0.0)) throw InvalidInputError("ChiSquaredLaw: requires df > 0");
}
double ChiSquaredLaw::pdf(double x) const { return special::chi_squared_pdf(x, df_); }
double ChiSquaredLaw::cdf(double x) const { return special::chi_squared_cdf(x, df_); }
double ChiSquaredLaw::quantile(double u) const {
    return special::chi_squared_quantile(u, df_);
}

KappaDist::KappaDist(double p, double q, double lambda)
    : p_(p), q_(q), lambda_(lambda) {
    if (!(p > 0.0)) throw InvalidInputError("KappaDist: requires p > 0");
    if (!(q >= 0.0)) throw InvalidInputError("KappaDist: requires q >= 0");
    if (!(lambda >= 0.0)) throw InvalidInputError("KappaDist: requires lambda >= 0");
    support_low_ = p_ * lambda_ * lambda_;
    log_gamma_tail_ = special::log_gamma_q(0.5 * p_, 0.5 * support_low_);
    lg_half_sum_ = special::log_gamma(0.5 * (p_ + q_));
    build();
}

double KappaDist::log_pdf(double s) const {
    if (!std::isfinite(s)) return -kInf;
    if (lambda_ == 0.0) {
        if (s <= 0.0) return -kInf;
        double h = 0.5 * (p_ + q_);
        return (h - 1.0) * std::log(s) - 0.5 * s - h * kLn2 - lg_half_sum_;
    }
    if (q_ == 0.0)
        return log_trunc_chisq_pdf(s, p_, support_low_, log_gamma_tail_);
    if (s <= support_low_) return -kInf;
    // beta tail argument 1 - p lambda^2 / s, formed without cancellation
    double y = (s - support_low_) / s;
    double lbt = special::log_beta_tail_from_y(y, 0.5 * p_, 0.5 * q_);
    double h = 0.5 * (p_ + q_);
    double lfc = (h - 1.0) * std::log(s) - 0.5 * s - h * kLn2 - lg_half_sum_;
    return lfc + lbt - log_gamma_tail_;
}

double KappaDist::pdf(double s) const {
    double lp = log_pdf(s);
    return lp == -kInf ? 0.0 : std::exp(lp);
}

void KappaDist::build() {
    // Bracket the mass with the exact tail-conditioned moments, then verify
    // the horizon with the bound  1 - F(U) <= Q((p+q)/2, U/2) / Q(p/2, c).
    double m1_z, var_z;
    tail_chisq_moments(p_, support_low_, &m1_z, &var_z);
    double prelim_mean = m1_z + q_;
    double prelim_sd = std::sqrt(var_z + 2.0 * q_ + 2.0);
    double upper = prelim_mean + 40.0 * prelim_sd;
    const double log_tol = std::log(1e-13);
    for (int i = 0; i < 200; ++i) {
        double bound =
            special::log_gamma_q(0.5 * (p_ + q_), 0.5 * upper) - log_gamma_tail_;
        if (bound <= log_tol) break;
        upper += 10.0 * prelim_sd + 0.25 * upper;
    }
    upper_ = upper;

    std::vector<quad::Panel> panels;
    auto f = [this](double s) { return pdf(s); };
    auto r = quad::integrate(f, support_low_, upper_, quad::default_tolerance(),
                             &panels);
    xs_.clear();
    Fs_.clear();
    xs_.reserve(panels.size() + 1);
    Fs_.reserve(panels.size() + 1);
    xs_.push_back(support_low_);
    Fs_.push_back(0.0);
    double acc = 0.0;
    for (const auto& pn : panels) {
        acc += pn.integral;
        xs_.push_back(pn.b);
        Fs_.push_back(acc);
    }
    total_ = r.value;

    moments_.mu_coeff = trunc_m1_second_moment(lambda_);
    moments_.fourth = trunc_m1_fourth_moment(lambda_);
    if (lambda_ == 0.0) {
        moments_.mean = p_ + q_;
        moments_.variance = 2.0 * (p_ + q_);
    } else {
        double tol_m = quad::default_tolerance() * std::max(1.0, prelim_mean);
        double mean = quad::integrate([&](double s) { return s * pdf(s); },
                                      support_low_, upper_, tol_m)
                          .value;
        double tol_v = quad::default_tolerance() * std::max(1.0, var_z + 2.0 * q_);
        double var = quad::integrate(
                         [&](double s) {
                             double d = s - mean;
                             return d * d * pdf(s);
                         },
                         support_low_, upper_, tol_v)
                         .value;
        moments_.mean = mean;
        moments_.variance = var;
    }
}

double KappaDist::table_cdf(double s) const {
    if (s <= support_low_) return 0.0;
    if (s >= upper_) return total_;
    auto it = std::upper_bound(xs_.begin(), xs_.end(), s);
    std::size_t k = static_cast<std::size_t>(it - xs_.begin()) - 1;
    double base = Fs_[k];
    double a = xs_[k];
    if (s <= a) return base;
    auto f = [this](double x) { return pdf(x); };
    return base + quad::integrate(f, a, s, 1e-13).value;
}

double KappaDist::cdf(double s) const {
    if (!std::isfinite(s)) return s > 0.0 ? total_ : 0.0;
    return table_cdf(s);
}

double KappaDist::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw InvalidInputError("kappa_quantile: requires u in (0,1)");
    // the table resolves the upper tail to ~1 - 1e-10; beyond that the
    // horizon itself satisfies the roundtrip contract
    if (u >= total_) return upper_;
    auto it = std::lower_bound(Fs_.begin(), Fs_.end(), u);
    std::size_t k = static_cast<std::size_t>(it - Fs_.begin());
    // Fs_[0] = 0 < u <= Fs_.back(), so 1 <= k < Fs_.size()
    double lo = xs_[k - 1], hi = xs_[k];
    double flo = Fs_[k - 1] - u, fhi = Fs_[k] - u;
    if (flo == 0.0) return lo;
    // Illinois-damped false position
    int side = 0;
    for (int iter = 0; iter < 200; ++iter) {
        double denom = fhi - flo;
        double s = (denom != 0.0) ? (lo * fhi - hi * flo) / denom
                                  : 0.5 * (lo + hi);
        if (!(s > lo && s < hi)) s = 0.5 * (lo + hi);
        double fs = table_cdf(s) - u;
        if (std::fabs(fs) <= 1e-10 ||
            hi - lo <= 1e-13 * std::max(1.0, std::fabs(s)))
            return s;
        if (fs > 0.0) {
            hi = s;
            fhi = fs;
            if (side == 1) flo *= 0.5;
            side = 1;
        } else {
            lo = s;
            flo = fs;
            if (side == -1) fhi *= 0.5;
            side = -1;
        }
    }
    throw NumericError("kappa_quantile: did not converge");
}

DfMode parse_df_mode(const std::string& s) {
    if (s == "ceil") return DfMode::ceil;
    if (s == "fractional") return DfMode::fractional;
    throw InvalidInputError("unknown df mode: " + s);
}

NormalApprox approx_normal(double kappa, const KappaDist& d) {
    const Moments& m = d.moments();
    if (!(m.variance > 0.0))
        throw NumericError("approx_normal: law variance is zero");
    double z = (kappa - m.mean) / std::sqrt(m.variance);
    return {z, special::norm_cdf(-z)};
}

ChiSqApprox approx_chisq(double kappa, const KappaDist& d, DfMode mode) {
    double df = d.p() * d.moments().mu_coeff + d.q();
    if (mode == DfMode::ceil) df = std::ceil(df);
    double p_value = kappa <= 0.0
                         ? 1.0
                         : std::exp(special::log_gamma_q(0.5 * df, 0.5 * kappa));
    return {df, p_value};
}

}  // namespace wfa::dist
