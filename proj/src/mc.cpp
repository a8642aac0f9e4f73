#include "wfa/mc.hpp"

#include <algorithm>
#include <cmath>

#include "wfa/errors.hpp"
#include "wfa/rng.hpp"
#include "wfa/shrink.hpp"

namespace wfa::mc {

namespace {

void validate_spec(const SimSpec& spec) {
    if (spec.reps < 1) throw InvalidInputError("simulate: reps must be >= 1");
    if (spec.treatments < 2)
        throw InvalidInputError("simulate: need at least 2 treatments");
    if (spec.replicates < 1)
        throw InvalidInputError("simulate: need at least 1 replicate");
    dwt::log2_exact(spec.length);  // power-of-two check
}

kappa::TestConfig config_of(const SimSpec& spec) {
    kappa::TestConfig cfg;
    cfg.wavelet = spec.wavelet;
    cfg.levels = spec.levels;
    return cfg;
}

}  // namespace

std::vector<double> SimResult::survivor_mean() const {
    std::vector<double> mean(treatments, 0.0);
    const std::size_t reps = kappa.size();
    for (std::size_t k = 0; k < reps; ++k)
        for (std::size_t i = 0; i < treatments; ++i)
            mean[i] += survivor_count(k, i);
    for (auto& m : mean) m /= static_cast<double>(reps);
    return mean;
}

profiles::ProfileSet null_profiles(const SimSpec& spec, std::uint64_t rep) {
    const std::size_t T = spec.treatments, r = spec.replicates, n = spec.length;
    std::vector<std::vector<std::vector<double>>> values(T);
    for (std::size_t i = 0; i < T; ++i) {
        values[i].resize(r);
        for (std::size_t j = 0; j < r; ++j) {
            rng::Splitmix64 gen(spec.seed, rep * (T * r) + i * r + j);
            auto& curve = values[i][j];
            curve.resize(n);
            for (std::size_t k = 0; k < n; ++k) curve[k] = gen.next_normal();
        }
    }
    return profiles::from_values(std::move(values));
}

SimResult simulate_null(const SimSpec& spec, ExecMode mode) {
    validate_spec(spec);
    const auto cfg = config_of(spec);
    const int l_t = kappa::effective_levels(cfg, spec.length);
    const auto pc = shrink::partition_counts(spec.length, l_t);

    SimResult out;
    out.treatments = spec.treatments;
    out.p_slots = pc.p_slots;
    out.n_t = pc.q_slots;
    out.lambda = shrink::universal_threshold(1.0, spec.length);
    out.kappa.resize(spec.reps);
    out.survivors.resize(spec.reps * spec.treatments);

    for_each_index(spec.reps, mode, [&](std::size_t k) {
        auto ps = null_profiles(spec, k);
        auto stat = kappa::compute_kappa(ps, cfg);
        out.kappa[k] = stat.value;
        for (std::size_t i = 0; i < spec.treatments; ++i)
            out.survivors[k * spec.treatments + i] =
                static_cast<std::uint32_t>(stat.per_treatment[i].survivors);
    });
    return out;
}

std::vector<double> sample_kappa_dist(const dist::KappaDist& d, std::size_t n,
                                      std::uint64_t seed, ExecMode mode) {
    if (n < 1) throw InvalidInputError("sample_kappa_dist: need n >= 1");
    std::vector<double> draws(n);
    for_each_index(n, mode, [&](std::size_t k) {
        rng::Splitmix64 gen(seed, k);
        draws[k] = d.quantile(gen.next_double());
    });
    return draws;
}

double empirical_quantile(std::span<const double> sorted, double level) {
    if (sorted.empty())
        throw InvalidInputError("empirical_quantile: empty sample");
    if (level <= 0.0) return sorted.front();
    if (level >= 1.0) return sorted.back();
    double pos = level * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

AdequacyReport adequacy(std::span<const double> samples,
                        const dist::NullLaw& law) {
    if (samples.empty()) throw InvalidInputError("adequacy: empty sample");
    const std::size_t n = samples.size();
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    AdequacyReport rep;
    rep.count = n;

    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m4 = 0.0;
    for (double v : sorted) {
        double dlt = v - mean;
        m2 += dlt * dlt;
        m4 += dlt * dlt * dlt * dlt;
    }
    double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    double m2n = m2 / static_cast<double>(n);
    double m4n = m4 / static_cast<double>(n);
    rep.sample_mean = mean;
    rep.sample_variance = var;
    rep.mean_gap = law.mean() - mean;
    rep.mean_se = std::sqrt(var / static_cast<double>(n));
    rep.variance_gap = law.variance() - var;
    rep.variance_se =
        std::sqrt(std::max(m4n - m2n * m2n, 0.0) / static_cast<double>(n));

    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double F = law.cdf(sorted[i]);
        double lo = static_cast<double>(i) / static_cast<double>(n);
        double hi = static_cast<double>(i + 1) / static_cast<double>(n);
        d = std::max(d, std::max(F - lo, hi - F));
    }
    rep.ks_distance = d;

    for (double level : {0.90, 0.95, 0.99})
        rep.quantile_table.push_back(
            {level, empirical_quantile(sorted, level), law.quantile(level)});
    return rep;
}

SurvivorRate survivor_rate(const SimResult& result, const SimSpec& spec) {
    SurvivorRate sr;
    sr.pi = dist::pi_nonzero(spec.length);
    const double slots = static_cast<double>(result.p_slots);
    sr.expected = slots * sr.pi;
    sr.se = std::sqrt(slots * sr.pi * (1.0 - sr.pi) /
                      static_cast<double>(result.kappa.size()));
    sr.observed_mean = result.survivor_mean();
    return sr;
}

}  // namespace wfa::mc
