#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wfa::dist {

double norm_cdf(double x);
double norm_quantile(double u);
double reg_inc_gamma(double s, double x);
double reg_inc_beta(double x, double a, double b);

// Probability that a standard normal coefficient survives the universal
// threshold: 2 (1 - Phi(sqrt(2 ln n))), n >= 2.
double pi_nonzero(std::size_t n);

// Expected pooled survivor count T (n - n_t) pi, with n_t = n / 2^{l_t}.
// Feeds the binomial-normal and binomial-chi-squared approximations.
double binomial_df(std::size_t treatments, std::size_t n, int l_t);

// Per-coefficient moments of the threshold-conditioned coefficient law
// (M = 1 truncated chi-squared), computed by adaptive quadrature of
// z^k phi(z) over |z| > lambda.
double trunc_m1_second_moment(double lambda);
double trunc_m1_fourth_moment(double lambda);

struct Moments {
    double mu_coeff;  // per-coefficient truncated second moment
    double fourth;    // per-coefficient truncated fourth moment
    double mean;      // mean of the analytic law
    double variance;  // variance of the analytic law
};

// Chi-squared law restricted to [M lambda^2, inf) and renormalized.
class TruncChiSq {
public:
    TruncChiSq(int dof, double lambda);
    int dof() const { return dof_; }
    double lambda() const { return lambda_; }
    double support_low() const { return support_low_; }
    double pdf(double x) const;
    // By quadrature of e^{tx} against the density; requires t < 1/2. At
    // lambda = 0 this equals (1 - 2t)^{-M/2}.
    double mgf(double t) const;

private:
    int dof_;
    double lambda_;
    double support_low_;
    double log_norm_tail_;  // log Q(M/2, M lambda^2 / 2)
};

// Minimal interface shared by candidate null laws, for the Monte Carlo
// adequacy diagnostics.
class NullLaw {
public:
    virtual ~NullLaw() = default;
    virtual double cdf(double s) const = 0;
    virtual double quantile(double u) const = 0;
    virtual double mean() const = 0;
    virtual double variance() const = 0;
};

class ChiSquaredLaw final : public NullLaw {
public:
    explicit ChiSquaredLaw(double df);
    double df() const { return df_; }
    double pdf(double x) const;
    double cdf(double x) const override;
    double quantile(double u) const override;
    double mean() const override { return df_; }
    double variance() const override { return 2.0 * df_; }

private:
    double df_;
};

// Null law of the pooled statistic: the convolution of a truncated
// chi-squared with p degrees of freedom (support [p lambda^2, inf)) and a
// plain chi-squared with q degrees of freedom. Density, CDF, quantile and
// moments. Immutable after construction; all queries are thread-safe. The
// density is evaluated in log space, so parameter regimes whose gamma/beta
// tails underflow a double still work.
class KappaDist final : public NullLaw {
public:
    // p > 0 (real), q >= 0 (real), lambda >= 0.
    KappaDist(double p, double q, double lambda);

    double p() const { return p_; }
    double q() const { return q_; }
    double lambda() const { return lambda_; }
    double support_low() const { return support_low_; }

    double pdf(double s) const;
    double log_pdf(double s) const;
    double cdf(double s) const override;
    double quantile(double u) const override;
    const Moments& moments() const { return moments_; }
    double mean() const override { return moments_.mean; }
    double variance() const override { return moments_.variance; }

private:
    void build();
    double table_cdf(double s) const;

    double p_, q_, lambda_;
    double support_low_;
    double log_gamma_tail_;  // log Q(p/2, p lambda^2 / 2)
    double lg_half_sum_;     // log Gamma((p+q)/2)
    double upper_;           // integration horizon
    Moments moments_{};
    std::vector<double> xs_;  // panel boundaries, xs_[0] = support_low_
    std::vector<double> Fs_;  // CDF at the boundaries
    double total_ = 0.0;
};

enum class DfMode { ceil, fractional };
DfMode parse_df_mode(const std::string& s);

struct NormalApprox {
    double z;
    double p_value;
};

// Central-limit approximation: z-score of kappa against the law's mean and
// standard deviation, one-sided upper p-value.
NormalApprox approx_normal(double kappa, const KappaDist& d);

struct ChiSqApprox {
    double df;
    double p_value;
};

// Moment-matched chi-squared tail with df = p mu + q, fractional or rounded
// up to the next integer.
ChiSqApprox approx_chisq(double kappa, const KappaDist& d, DfMode mode);

}  // namespace wfa::dist
