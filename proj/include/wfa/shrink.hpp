#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wfa/dwt.hpp"

namespace wfa::shrink {

// Robust noise scale: median(|d|) / 0.6745.
double mad_sigma(std::span<const double> finest_details);

// Universal (VisuShrink) threshold sigma * sqrt(2 ln n).
double universal_threshold(double sigma, std::size_t n);

// (p_slots, q_slots) = (n - n/2^{l_t}, n/2^{l_t}) for n = 2^J, 1 <= l_t <= J.
struct PartitionCounts {
    std::size_t p_slots;
    std::size_t q_slots;
};
PartitionCounts partition_counts(std::size_t n, int l_t);

// Hard-threshold plan: the l_t finest detail levels are subject to the
// keep-kill rule at threshold lambda; everything else passes through.
struct ThresholdPlan {
    double lambda = 0.0;
    int l_t = 1;
    std::size_t n = 0;
    std::size_t n_t = 0;  // unthresholded coefficient count, n / 2^{l_t}

    static ThresholdPlan make(std::size_t n, int l_t, double lambda);
    std::size_t p_slots() const { return n - n_t; }
    std::size_t q_slots() const { return n_t; }
};

struct ShrunkCoefficients {
    std::vector<double> kept;           // survivors, |theta| > lambda
    std::size_t survivors = 0;          // kept.size()
    std::vector<double> unthresholded;  // exempt region, n_t coefficients
};

// Applies the keep-kill rule |theta| > lambda to the plan's thresholded
// region of `d`; coarser detail levels and the scaling block pass through.
ShrunkCoefficients hard_threshold(const dwt::Decomposition& d,
                                  const ThresholdPlan& plan);

}  // namespace wfa::shrink
