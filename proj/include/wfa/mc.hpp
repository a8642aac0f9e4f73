#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wfa/dist.hpp"
#include "wfa/kappa.hpp"
#include "wfa/parallel.hpp"
#include "wfa/profiles.hpp"

namespace wfa::mc {

struct SimSpec {
    std::size_t treatments = 2;
    std::size_t replicates = 5;
    std::size_t length = 128;
    std::string wavelet = "haar";
    int levels = 0;  // l_t; 0 means all detail levels
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
};

struct SimResult {
    std::vector<double> kappa;             // one per replication
    std::vector<std::uint32_t> survivors;  // reps x T, row-major
    std::size_t treatments = 0;
    std::size_t p_slots = 0;  // thresholded slots per treatment
    std::size_t n_t = 0;
    double lambda = 0.0;

    std::uint32_t survivor_count(std::size_t rep, std::size_t treatment) const {
        return survivors[rep * treatments + treatment];
    }
    std::vector<double> survivor_mean() const;
};

// The rep-th synthetic dataset under the null: i.i.d. standard normal noise
// around a common (zero) mean curve. Curve (i,j) of replication `rep` draws
// from the substream with counter rep*(T*r) + i*r + j, so results do not
// depend on evaluation order.
profiles::ProfileSet null_profiles(const SimSpec& spec, std::uint64_t rep);

// Runs the full statistic pipeline on `reps` independent null datasets.
// Deterministic given the seed, bit-identical across execution modes.
SimResult simulate_null(const SimSpec& spec,
                        ExecMode mode = ExecMode::parallel);

// N inverse-CDF draws from the analytic law; draw k uses substream k.
std::vector<double> sample_kappa_dist(const dist::KappaDist& d, std::size_t n,
                                      std::uint64_t seed,
                                      ExecMode mode = ExecMode::parallel);

struct QuantileRow {
    double level;
    double empirical;
    double analytic;
};

struct AdequacyReport {
    std::size_t count = 0;
    double ks_distance = 0.0;
    double sample_mean = 0.0;
    double sample_variance = 0.0;
    double mean_gap = 0.0;      // analytic minus empirical
    double mean_se = 0.0;
    double variance_gap = 0.0;  // analytic minus empirical
    double variance_se = 0.0;
    std::vector<QuantileRow> quantile_table;  // levels 0.90, 0.95, 0.99
};

// Diagnostics comparing an empirical sample against a candidate null law.
// Purely descriptive: no pass/fail judgment is encoded.
AdequacyReport adequacy(std::span<const double> samples,
                        const dist::NullLaw& law);

struct SurvivorRate {
    double pi = 0.0;             // per-coefficient survival probability
    double expected = 0.0;       // (n - n_t) pi per treatment
    double se = 0.0;             // binomial SE of the per-rep mean count
    std::vector<double> observed_mean;  // per treatment
};

SurvivorRate survivor_rate(const SimResult& result, const SimSpec& spec);

// Empirical quantile (linear interpolation between order statistics).
double empirical_quantile(std::span<const double> sorted, double level);

}  // namespace wfa::mc
