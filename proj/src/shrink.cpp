#include "wfa/shrink.hpp"

#include <algorithm>
#include <cmath>

#include "wfa/errors.hpp"

namespace wfa::shrink {

double mad_sigma(std::span<const double> finest_details) {
    if (finest_details.empty())
        throw InvalidInputError("mad_sigma: empty input");
    std::vector<double> mags(finest_details.size());
    std::transform(finest_details.begin(), finest_details.end(), mags.begin(),
                   [](double v) { return std::fabs(v); });
    std::sort(mags.begin(), mags.end());
    const std::size_t m = mags.size();
    double median = (m % 2 == 1) ? mags[m / 2]
                                 : 0.5 * (mags[m / 2 - 1] + mags[m / 2]);
    return median / 0.6745;
}

double universal_threshold(double sigma, std::size_t n) {
    if (n == 0) throw InvalidInputError("universal_threshold: n must be >= 1");
    if (!(sigma >= 0.0))
        throw InvalidInputError("universal_threshold: sigma must be >= 0");
    return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

PartitionCounts partition_counts(std::size_t n, int l_t) {
    const int J = dwt::log2_exact(n);
    if (l_t < 1 || l_t > J)
        throw InvalidInputError("partition_counts: l_t out of range [1, J]");
    std::size_t n_t = n >> l_t;
    return {n - n_t, n_t};
}

ThresholdPlan ThresholdPlan::make(std::size_t n, int l_t, double lambda) {
    if (!(lambda >= 0.0))
        throw InvalidInputError("threshold plan: lambda must be >= 0");
    PartitionCounts pc = partition_counts(n, l_t);
    ThresholdPlan plan;
    plan.lambda = lambda;
    plan.l_t = l_t;
    plan.n = n;
    plan.n_t = pc.q_slots;
    return plan;
}

ShrunkCoefficients hard_threshold(const dwt::Decomposition& d,
                                  const ThresholdPlan& plan) {
    if (d.size() != plan.n)
        throw InvalidInputError("hard_threshold: plan/decomposition mismatch");
    if (plan.l_t > d.levels - d.coarsest)
        throw InvalidInputError(
            "hard_threshold: plan thresholds more detail levels than present");
    ShrunkCoefficients out;
    out.unthresholded.reserve(plan.n_t);
    for (std::size_t b = 0; b < d.details.size(); ++b) {
        const auto& block = d.details[b];
        if (b < static_cast<std::size_t>(plan.l_t)) {
            for (double v : block)
                if (std::fabs(v) > plan.lambda) out.kept.push_back(v);
        } else {
            out.unthresholded.insert(out.unthresholded.end(), block.begin(),
                                     block.end());
        }
    }
    out.unthresholded.insert(out.unthresholded.end(), d.scaling.begin(),
                             d.scaling.end());
    out.survivors = out.kept.size();
    return out;
}

}  // namespace wfa::shrink
