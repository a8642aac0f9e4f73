#pragma once

#include <span>
#include <string>
#include <vector>

namespace wfa::dwt {

// Orthonormal analysis filter pair. The high-pass taps are derived from the
// low-pass taps by the quadrature-mirror relation g_k = (-1)^k h_{L-1-k}.
struct WaveletFilter {
    std::string name;
    std::vector<double> lowpass;
    std::vector<double> highpass;
};

// Supported names: "haar", "d4", "d8".
WaveletFilter make_filter(const std::string& name);
const std::vector<std::string>& filter_names();

// Multilevel decomposition of a length-n = 2^J vector down to level j0.
// details[k] holds W_{J-1-k} (finest first); scaling holds V_{j0}.
struct Decomposition {
    int levels = 0;    // J
    int coarsest = 0;  // j0
    std::vector<std::vector<double>> details;
    std::vector<double> scaling;

    std::size_t size() const;                     // n
    const std::vector<double>& detail(int level) const;
};

// Pyramid analysis with periodic boundary handling. Requires n = 2^J and
// 0 <= j0 <= J-1.
Decomposition dwt_forward(std::span<const double> y, const WaveletFilter& f,
                          int j0 = 0);

// Exact inverse (the per-stage matrices are orthonormal, so synthesis is the
// transpose of analysis).
std::vector<double> dwt_inverse(const Decomposition& d, const WaveletFilter& f);

// Coefficient vector ordered finest detail block first, scaling block last.
std::vector<double> flatten(const Decomposition& d);

bool is_power_of_two(std::size_t n);
int log2_exact(std::size_t n);

}  // namespace wfa::dwt
