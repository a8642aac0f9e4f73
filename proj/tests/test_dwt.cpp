#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wfa/dwt.hpp"
#include "wfa/errors.hpp"

using namespace wfa::dwt;

namespace {

std::vector<double> random_vector(oracle::TestRng& rng, std::size_t n) {
    std::vector<double> y(n);
    for (auto& v : y) v = 2.0 * rng.uniform() - 1.0;
    return y;
}

double sum_sq(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace

TEST_CASE("filter invariants for every supported name") {
    for (const auto& name : filter_names()) {
        auto f = make_filter(name);
        const auto& h = f.lowpass;
        const auto& g = f.highpass;
        REQUIRE(h.size() == g.size());
        REQUIRE(h.size() % 2 == 0);
        double sum = 0.0, sum2 = 0.0;
        for (double c : h) {
            sum += c;
            sum2 += c * c;
        }
        CHECK(std::fabs(sum - std::sqrt(2.0)) < 1e-12);
        CHECK(std::fabs(sum2 - 1.0) < 1e-12);
        for (std::size_t m = 1; 2 * m < h.size(); ++m) {
            double dot = 0.0;
            for (std::size_t k = 0; k + 2 * m < h.size(); ++k)
                dot += h[k] * h[k + 2 * m];
            CHECK(std::fabs(dot) < 1e-12);
        }
        for (std::size_t k = 0; k < h.size(); ++k) {
            double want = (k % 2 == 0 ? 1.0 : -1.0) * h[h.size() - 1 - k];
            CHECK(g[k] == want);
        }
    }
    CHECK_THROWS_AS(make_filter("bogus"), wfa::InvalidInputError);
}

TEST_CASE("haar taps are the closed-form solution") {
    auto f = make_filter("haar");
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(f.lowpass == std::vector<double>{s, s});
    CHECK(f.highpass == std::vector<double>{s, -s});
}

TEST_CASE("haar transform matches the explicit matrix oracle") {
    auto haar = make_filter("haar");

    auto d2 = dwt_forward(std::vector<double>{1.0, -1.0}, haar, 0);
    auto o2 = oracle::haar2_times({1.0, -1.0});
    CHECK(std::fabs(d2.detail(0)[0] - o2[0]) < 1e-14);  // sqrt(2)
    CHECK(std::fabs(d2.detail(0)[0] - std::sqrt(2.0)) < 1e-14);
    CHECK(std::fabs(d2.scaling[0] - o2[1]) < 1e-14);    // 0

    oracle::TestRng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        auto y = random_vector(rng, 4);
        auto flat = flatten(dwt_forward(y, haar, 0));
        auto want = oracle::haar4_times(y);
        REQUIRE(flat.size() == 4);
        for (int k = 0; k < 4; ++k) CHECK(std::fabs(flat[k] - want[k]) < 1e-12);
    }

    auto ones = dwt_forward(std::vector<double>{1.0, 1.0, 1.0, 1.0}, haar, 0);
    CHECK(ones.detail(1) == std::vector<double>{0.0, 0.0});
    CHECK(ones.detail(0) == std::vector<double>{0.0});
    CHECK(std::fabs(ones.scaling[0] - 2.0) < 1e-12);
}

TEST_CASE("haar details of constant input are exactly zero") {
    auto haar = make_filter("haar");
    auto d = dwt_forward(std::vector<double>(64, 3.25), haar, 0);
    for (const auto& block : d.details)
        for (double v : block) CHECK(v == 0.0);
}

TEST_CASE("Parseval and perfect reconstruction on random inputs") {
    oracle::TestRng rng(23);
    for (const auto& name : filter_names()) {
        auto f = make_filter(name);
        for (int rep = 0; rep < 30; ++rep) {
            std::size_t n = std::size_t{1} << (1 + rng.next_u64() % 10);
            auto y = random_vector(rng, n);
            auto d = dwt_forward(y, f, 0);
            CHECK(d.size() == n);
            double e_y = sum_sq(y);
            double e_c = sum_sq(flatten(d));
            CHECK(std::fabs(e_c - e_y) <= 1e-10 * std::max(1.0, e_y));
            auto back = dwt_inverse(d, f);
            double err = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                err = std::max(err, std::fabs(back[k] - y[k]));
            CHECK(err <= 1e-10);
        }
    }
}

TEST_CASE("linearity holds blockwise") {
    oracle::TestRng rng(31);
    auto f = make_filter("d4");
    auto y = random_vector(rng, 32);
    auto z = random_vector(rng, 32);
    const double a = 1.7, b = -0.4;
    std::vector<double> mix(32);
    for (int k = 0; k < 32; ++k) mix[k] = a * y[k] + b * z[k];
    auto dy = dwt_forward(y, f, 0);
    auto dz = dwt_forward(z, f, 0);
    auto dm = dwt_forward(mix, f, 0);
    for (std::size_t blk = 0; blk < dm.details.size(); ++blk)
        for (std::size_t k = 0; k < dm.details[blk].size(); ++k)
            CHECK(std::fabs(dm.details[blk][k] - (a * dy.details[blk][k] +
                                                  b * dz.details[blk][k])) <
                  1e-12);
    for (std::size_t k = 0; k < dm.scaling.size(); ++k)
        CHECK(std::fabs(dm.scaling[k] - (a * dy.scaling[k] + b * dz.scaling[k])) <
              1e-12);
}

TEST_CASE("partial transform block shapes and flatten ordering") {
    oracle::TestRng rng(5);
    auto f = make_filter("haar");
    auto y = random_vector(rng, 8);
    auto d = dwt_forward(y, f, 1);
    CHECK(d.levels == 3);
    CHECK(d.coarsest == 1);
    REQUIRE(d.details.size() == 2);
    CHECK(d.details[0].size() == 4);  // W_2
    CHECK(d.details[1].size() == 2);  // W_1
    CHECK(d.scaling.size() == 2);     // V_1
    auto flat = flatten(d);
    REQUIRE(flat.size() == 8);
    CHECK(flat[0] == d.details[0][0]);
    CHECK(flat[4] == d.details[1][0]);
    CHECK(flat[6] == d.scaling[0]);
    auto back = dwt_inverse(d, f);
    for (int k = 0; k < 8; ++k) CHECK(std::fabs(back[k] - y[k]) < 1e-12);
}

TEST_CASE("flatten of the degenerate decomposition is the scaling block") {
    Decomposition d;
    d.levels = 2;
    d.coarsest = 2;
    d.scaling = {1.0, 2.0, 3.0, 4.0};
    CHECK(flatten(d) == d.scaling);
    auto f = make_filter("haar");
    CHECK(dwt_inverse(d, f) == d.scaling);
}

TEST_CASE("flatten example ordering") {
    Decomposition d;
    d.levels = 2;
    d.coarsest = 0;
    d.details = {{10.0, 11.0}, {12.0}};  // W_1, W_0
    d.scaling = {13.0};                  // V_0
    CHECK(flatten(d) == std::vector<double>{10.0, 11.0, 12.0, 13.0});
}

TEST_CASE("argument validation") {
    auto f = make_filter("haar");
    std::vector<double> y(6, 1.0);
    CHECK_THROWS_AS(dwt_forward(y, f, 0), wfa::InvalidInputError);
    std::vector<double> y8(8, 1.0);
    CHECK_THROWS_AS(dwt_forward(y8, f, 3), wfa::InvalidInputError);
    CHECK_THROWS_AS(dwt_forward(y8, f, -1), wfa::InvalidInputError);

    Decomposition bad;
    bad.levels = 2;
    bad.coarsest = 0;
    bad.details = {{1.0, 2.0}, {3.0, 4.0}};  // W_0 has the wrong length
    bad.scaling = {5.0};
    CHECK_THROWS_AS(dwt_inverse(bad, f), wfa::InvalidInputError);
}

TEST_CASE("d8 roundtrip on length 64") {
    oracle::TestRng rng(99);
    auto f = make_filter("d8");
    auto y = random_vector(rng, 64);
    auto back = dwt_inverse(dwt_forward(y, f, 0), f);
    double err = 0.0;
    for (int k = 0; k < 64; ++k) err = std::max(err, std::fabs(back[k] - y[k]));
    CHECK(err <= 1e-10);
}
