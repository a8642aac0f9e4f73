#include "wfa/kappa.hpp"

#include <algorithm>
#include <cmath>

#include "wfa/dwt.hpp"
#include "wfa/errors.hpp"
#include "wfa/shrink.hpp"
#include "wfa/special.hpp"

namespace wfa::kappa {

namespace {

double sum_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

bool uses_binomial_p(Method m) {
    return m == Method::binom_normal || m == Method::binom_chisq;
}

}  // namespace

Method parse_method(const std::string& s) {
    if (s == "exact") return Method::exact;
    if (s == "normal") return Method::normal;
    if (s == "chisq") return Method::chisq;
    if (s == "binom-normal") return Method::binom_normal;
    if (s == "binom-chisq") return Method::binom_chisq;
    throw InvalidInputError("unknown method: " + s);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::normal: return "normal";
        case Method::chisq: return "chisq";
        case Method::binom_normal: return "binom-normal";
        case Method::binom_chisq: return "binom-chisq";
    }
    throw InvalidInputError("unknown method enum");
}

int effective_levels(const TestConfig& cfg, std::size_t n) {
    const int J = dwt::log2_exact(n);
    int l_t = cfg.levels == 0 ? J : cfg.levels;
    if (l_t < 1 || l_t > J)
        throw InvalidInputError("levels l_t out of range [1, J]");
    return l_t;
}

KappaStatistic compute_kappa(const profiles::ProfileSet& ps,
                             const TestConfig& cfg) {
    const std::size_t n = ps.length;
    const std::size_t T = ps.treatments();
    const int l_t = effective_levels(cfg, n);
    const auto filter = dwt::make_filter(cfg.wavelet);

    auto gs = profiles::summarize(ps, cfg.rho);
    auto ve = profiles::estimate_variance(gs, ps, cfg.rho);

    // Contrasts are standardized to unit variance, so the universal
    // threshold is used with sigma = 1.
    const double lambda = shrink::universal_threshold(1.0, n);
    const auto plan = shrink::ThresholdPlan::make(n, l_t, lambda);

    KappaStatistic stat;
    stat.lambda = lambda;
    stat.per_treatment.reserve(T);
    for (std::size_t i = 0; i < T; ++i) {
        auto contrast = profiles::standardized_contrast(gs, ve, i);
        auto decomp = dwt::dwt_forward(contrast, filter, 0);
        auto shrunk = hard_threshold(decomp, plan);
        PerTreatment pt;
        pt.p_slots = plan.p_slots();
        pt.survivors = shrunk.survivors;
        pt.q_slots = plan.q_slots();
        pt.kept_sum_sq = sum_sq(shrunk.kept);
        pt.unthresholded_sum_sq = sum_sq(shrunk.unthresholded);
        stat.value += pt.kept_sum_sq + pt.unthresholded_sum_sq;
        stat.p += pt.p_slots;
        stat.q += pt.q_slots;
        stat.per_treatment.push_back(pt);
    }
    return stat;
}

Degrees degrees(const TestConfig& cfg, std::size_t treatments, std::size_t n) {
    const int l_t = effective_levels(cfg, n);
    const auto pc = shrink::partition_counts(n, l_t);
    const double T = static_cast<double>(treatments);
    Degrees d;
    d.q = T * static_cast<double>(pc.q_slots);
    if (uses_binomial_p(cfg.method))
        d.p = dist::binomial_df(treatments, n, l_t);
    else
        d.p = T * static_cast<double>(pc.p_slots);
    return d;
}

TestReport run_test(const profiles::ProfileSet& ps, const TestConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw InvalidInputError("alpha must be in (0,1)");

    TestReport rep;
    rep.method = cfg.method;
    rep.alpha = cfg.alpha;
    rep.l_t = effective_levels(cfg, ps.length);
    rep.n_t = shrink::partition_counts(ps.length, rep.l_t).q_slots;

    auto gs = profiles::summarize(ps, cfg.rho);
    auto ve = profiles::estimate_variance(gs, ps, cfg.rho);
    rep.sigma_sq = ve.sigma_sq;
    rep.gamma = ve.gamma;

    rep.statistic = compute_kappa(ps, cfg);
    const double kappa = rep.statistic.value;
    const double lambda = rep.statistic.lambda;

    const Degrees deg = degrees(cfg, ps.treatments(), ps.length);
    rep.law_p = deg.p;
    rep.law_q = deg.q;

    const double mu = dist::trunc_m1_second_moment(lambda);
    const double df_frac = deg.p * mu + deg.q;
    rep.df = cfg.df_mode == dist::DfMode::ceil ? std::ceil(df_frac) : df_frac;

    const double u = 1.0 - cfg.alpha;
    switch (cfg.method) {
        case Method::exact: {
            dist::KappaDist law(deg.p, deg.q, lambda);
            rep.critical_value = law.quantile(u);
            rep.p_value = 1.0 - law.cdf(kappa);
            break;
        }
        case Method::normal:
        case Method::binom_normal: {
            dist::KappaDist law(deg.p, deg.q, lambda);
            auto na = dist::approx_normal(kappa, law);
            rep.p_value = na.p_value;
            rep.critical_value = law.mean() + special::norm_quantile(u) *
                                                 std::sqrt(law.variance());
            break;
        }
        case Method::chisq:
        case Method::binom_chisq: {
            rep.p_value = rep.df <= 0.0
                              ? 1.0
                              : std::exp(special::log_gamma_q(0.5 * rep.df,
                                                              0.5 * kappa));
            if (kappa <= 0.0) rep.p_value = 1.0;
            rep.critical_value = special::chi_squared_quantile(u, rep.df);
            break;
        }
    }
    rep.p_value = std::clamp(rep.p_value, 0.0, 1.0);
    rep.reject = rep.p_value < cfg.alpha;
    return rep;
}

}  // namespace wfa::kappa
