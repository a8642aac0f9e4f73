#pragma once

#include <cstdint>

#include "wfa/special.hpp"

namespace wfa::rng {

// SplitMix64 finalizer (Steele, Lea, Flood; Vigna's public-domain version).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
}

// State for one substream. Substreams are derived by counter: the stream
// index goes through the nonlinear finalizer twice before becoming a state,
// so streams are not shifted copies of each other.
inline std::uint64_t derive_stream_state(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t a = mix64(seed + UINT64_C(0x9E3779B97F4A7C15));
    std::uint64_t b = mix64(stream + UINT64_C(0xD1B54A32D192ED03));
    return mix64(a ^ (b + UINT64_C(0x9E3779B97F4A7C15)));
}

class Splitmix64 {
public:
    explicit Splitmix64(std::uint64_t state) : state_(state) {}
    Splitmix64(std::uint64_t seed, std::uint64_t stream)
        : state_(derive_stream_state(seed, stream)) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += UINT64_C(0x9E3779B97F4A7C15));
        return mix64(z);
    }

    // Uniform on (0,1), never exactly 0 or 1.
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal by inverse CDF: a fixed-cost deterministic transform
    // of one uniform, so substream consumption is platform-stable.
    double next_normal() { return special::norm_quantile(next_double()); }

private:
    std::uint64_t state_;
};

}  // namespace wfa::rng
