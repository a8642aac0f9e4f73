#include "wfa/dwt.hpp"

#include <cmath>

#include "wfa/errors.hpp"

namespace wfa::dwt {

namespace {

// Daubechies extremal-phase 8-tap taps from spectral factorization of
// P(y) = 1 + 4y + 10y^2 + 20y^3, rounded to nearest double. These satisfy
// sum h = sqrt(2), sum h^2 = 1 and the even-shift orthogonality to ~1e-17.
constexpr double kD8[8] = {
    0.23037781330889650633,   0.71484657055291567218,
    0.63088076792985892105,   -0.027983769416859854279,
    -0.18703481171909308589,  0.030841381835560763985,
    0.032883011666885196556,  -0.010597401785069031702};

std::vector<double> qmf_highpass(const std::vector<double>& h) {
    const std::size_t L = h.size();
    std::vector<double> g(L);
    for (std::size_t k = 0; k < L; ++k)
        g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[L - 1 - k];
    return g;
}

// One analysis stage: periodic filter-and-downsample of `in` (even length)
// into approximation and detail halves.
void analysis_stage(std::span<const double> in, const WaveletFilter& f,
                    std::vector<double>& approx, std::vector<double>& detail) {
    const std::size_t len = in.size();
    const std::size_t half = len / 2;
    const std::size_t L = f.lowpass.size();
    approx.assign(half, 0.0);
    detail.assign(half, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
        double a = 0.0, d = 0.0;
        for (std::size_t m = 0; m < L; ++m) {
            double v = in[(2 * k + m) % len];
            a += f.lowpass[m] * v;
            d += f.highpass[m] * v;
        }
        approx[k] = a;
        detail[k] = d;
    }
}

std::vector<double> synthesis_stage(std::span<const double> approx,
                                    std::span<const double> detail,
                                    const WaveletFilter& f) {
    const std::size_t half = approx.size();
    const std::size_t len = 2 * half;
    const std::size_t L = f.lowpass.size();
    std::vector<double> out(len, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
        for (std::size_t m = 0; m < L; ++m) {
            std::size_t idx = (2 * k + m) % len;
            out[idx] += f.lowpass[m] * approx[k] + f.highpass[m] * detail[k];
        }
    }
    return out;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
    if (!is_power_of_two(n))
        throw InvalidInputError("length is not a power of two");
    int j = 0;
    while ((std::size_t{1} << j) < n) ++j;
    return j;
}

WaveletFilter make_filter(const std::string& name) {
    WaveletFilter f;
    f.name = name;
    if (name == "haar") {
        const double s = 1.0 / std::sqrt(2.0);
        f.lowpass = {s, s};
    } else if (name == "d4") {
        const double r3 = std::sqrt(3.0);
        const double den = 4.0 * std::sqrt(2.0);
        f.lowpass = {(1.0 + r3) / den, (3.0 + r3) / den, (3.0 - r3) / den,
                     (1.0 - r3) / den};
    } else if (name == "d8") {
        f.lowpass.assign(kD8, kD8 + 8);
    } else {
        throw InvalidInputError("unknown wavelet filter: " + name);
    }
    f.highpass = qmf_highpass(f.lowpass);
    return f;
}

const std::vector<std::string>& filter_names() {
    static const std::vector<std::string> names = {"haar", "d4", "d8"};
    return names;
}

std::size_t Decomposition::size() const {
    std::size_t n = scaling.size();
    for (const auto& w : details) n += w.size();
    return n;
}

const std::vector<double>& Decomposition::detail(int level) const {
    if (level < coarsest || level >= levels)
        throw InvalidInputError("detail level out of range");
    return details[static_cast<std::size_t>(levels - 1 - level)];
}

Decomposition dwt_forward(std::span<const double> y, const WaveletFilter& f,
                          int j0) {
    const int J = log2_exact(y.size());
    if (j0 < 0 || j0 > J - 1)
        throw InvalidInputError("coarsest level j0 out of range");
    Decomposition d;
    d.levels = J;
    d.coarsest = j0;
    std::vector<double> cur(y.begin(), y.end());
    std::vector<double> approx, detail;
    for (int j = J - 1; j >= j0; --j) {
        analysis_stage(cur, f, approx, detail);
        d.details.push_back(detail);
        cur = approx;
    }
    d.scaling = cur;
    return d;
}

std::vector<double> dwt_inverse(const Decomposition& d, const WaveletFilter& f) {
    const int J = d.levels;
    const int j0 = d.coarsest;
    if (J < 0 || j0 < 0 || j0 > J)
        throw InvalidInputError("dwt_inverse: malformed decomposition");
    if (d.details.size() != static_cast<std::size_t>(J - j0))
        throw InvalidInputError("dwt_inverse: detail block count mismatch");
    const std::size_t n = std::size_t{1} << J;
    std::size_t expect = n >> (J - j0);
    if (d.scaling.size() != expect)
        throw InvalidInputError("dwt_inverse: scaling block length mismatch");
    std::vector<double> cur = d.scaling;
    for (int j = j0; j <= J - 1; ++j) {
        const auto& w = d.detail(j);
        if (w.size() != cur.size())
            throw InvalidInputError("dwt_inverse: detail block length mismatch");
        cur = synthesis_stage(cur, w, f);
    }
    return cur;
}

std::vector<double> flatten(const Decomposition& d) {
    std::vector<double> out;
    out.reserve(d.size());
    for (const auto& w : d.details) out.insert(out.end(), w.begin(), w.end());
    out.insert(out.end(), d.scaling.begin(), d.scaling.end());
    return out;
}

}  // namespace wfa::dwt
