#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wfa/dist.hpp"
#include "wfa/profiles.hpp"

namespace wfa::kappa {

enum class Method { exact, normal, chisq, binom_normal, binom_chisq };
Method parse_method(const std::string& s);
std::string method_name(Method m);

struct TestConfig {
    std::string wavelet = "haar";
    int levels = 0;  // l_t; 0 means all detail levels (J)
    Method method = Method::exact;
    double alpha = 0.05;
    dist::DfMode df_mode = dist::DfMode::fractional;
    profiles::RhoPolicy rho = profiles::RhoPolicy::zero;
};

// l_t resolved against the curve length (levels == 0 -> J).
int effective_levels(const TestConfig& cfg, std::size_t n);

struct PerTreatment {
    std::size_t p_slots;
    std::size_t survivors;
    std::size_t q_slots;
    double kept_sum_sq;
    double unthresholded_sum_sq;
};

struct KappaStatistic {
    double value = 0.0;
    std::size_t p = 0;  // pooled thresholded slots, sum_i p_i
    std::size_t q = 0;  // pooled unthresholded count, sum_i q_i
    double lambda = 0.0;
    std::vector<PerTreatment> per_treatment;
};

// Pooled sum of squared surviving and unthresholded wavelet coefficients of
// the standardized treatment contrasts.
KappaStatistic compute_kappa(const profiles::ProfileSet& ps,
                             const TestConfig& cfg);

struct Degrees {
    double p;
    double q;
};

// Slot-count degrees p = T (n - n_t) for the exact/normal/chisq methods;
// expected survivor count T (n - n_t) pi for the binomial variants.
// q = T n_t always.
Degrees degrees(const TestConfig& cfg, std::size_t treatments, std::size_t n);

struct TestReport {
    KappaStatistic statistic;
    Method method = Method::exact;
    double alpha = 0.05;
    double law_p = 0.0;
    double law_q = 0.0;
    double df = 0.0;  // moment-matched df p mu + q under the method's p
    double critical_value = 0.0;
    double p_value = 1.0;
    bool reject = false;
    double sigma_sq = 0.0;
    std::vector<double> gamma;
    int l_t = 0;
    std::size_t n_t = 0;
};

// Computes kappa, selects the null law per cfg.method, and returns the
// critical value at 1 - alpha, the upper-tail p-value and the decision.
TestReport run_test(const profiles::ProfileSet& ps, const TestConfig& cfg);

}  // namespace wfa::kappa
