#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "wfa/errors.hpp"
#include "wfa/mc.hpp"

using namespace wfa::mc;
using wfa::ExecMode;

TEST_CASE("simulation is deterministic in the seed") {
    SimSpec spec;
    spec.reps = 40;
    spec.seed = 123;
    auto a = simulate_null(spec);
    auto b = simulate_null(spec);
    CHECK(a.kappa == b.kappa);
    CHECK(a.survivors == b.survivors);
    spec.seed = 124;
    auto c = simulate_null(spec);
    CHECK(a.kappa != c.kappa);
}

TEST_CASE("serial and parallel modes are bit-identical") {
    SimSpec spec;
    spec.treatments = 3;
    spec.replicates = 4;
    spec.length = 64;
    spec.reps = 60;
    spec.seed = 2222;
    auto s = simulate_null(spec, ExecMode::serial);
    auto p = simulate_null(spec, ExecMode::parallel);
    CHECK(s.kappa == p.kappa);
    CHECK(s.survivors == p.survivors);

    wfa::dist::KappaDist law(8, 4, 1.0);
    auto ds = sample_kappa_dist(law, 500, 7, ExecMode::serial);
    auto dp = sample_kappa_dist(law, 500, 7, ExecMode::parallel);
    CHECK(ds == dp);
}

TEST_CASE("single replication yields one nonnegative statistic") {
    SimSpec spec;
    spec.reps = 1;
    spec.seed = 5;
    auto r = simulate_null(spec);
    REQUIRE(r.kappa.size() == 1);
    CHECK(r.kappa[0] >= 0.0);
}

TEST_CASE("spec validation") {
    SimSpec bad;
    bad.reps = 0;
    CHECK_THROWS_AS(simulate_null(bad), wfa::InvalidInputError);
    SimSpec one;
    one.treatments = 1;
    CHECK_THROWS_AS(simulate_null(one), wfa::InvalidInputError);
    SimSpec odd;
    odd.length = 100;
    CHECK_THROWS_AS(simulate_null(odd), wfa::InvalidInputError);
}

TEST_CASE("survivor counts track the binomial rate") {
    SimSpec spec;
    spec.treatments = 2;
    spec.replicates = 5;
    spec.length = 128;
    spec.reps = 800;
    spec.seed = 31415;
    auto r = simulate_null(spec);
    auto sr = survivor_rate(r, spec);
    CHECK(r.p_slots == 127);
    CHECK(sr.expected == doctest::Approx(127.0 * sr.pi).epsilon(1e-14));
    for (double obs : sr.observed_mean)
        CHECK(std::fabs(obs - sr.expected) <= 3.0 * sr.se);
}

TEST_CASE("relabeling treatments permutes nothing observable") {
    SimSpec spec;
    spec.treatments = 3;
    spec.replicates = 4;
    spec.length = 64;
    spec.reps = 5;
    spec.seed = 808;
    auto sim = simulate_null(spec);
    wfa::kappa::TestConfig cfg;
    cfg.wavelet = spec.wavelet;
    cfg.levels = spec.levels;
    for (std::uint64_t rep = 0; rep < spec.reps; ++rep) {
        auto ps = null_profiles(spec, rep);
        std::rotate(ps.values.begin(), ps.values.begin() + 1, ps.values.end());
        double relabeled = wfa::kappa::compute_kappa(ps, cfg).value;
        CHECK(std::fabs(relabeled - sim.kappa[rep]) <=
              1e-12 * std::max(1.0, sim.kappa[rep]));
    }
}

TEST_CASE("inverse-CDF draws respect the support and the chi-squared mean") {
    wfa::dist::KappaDist law(8, 4, 1.5);
    auto draws = sample_kappa_dist(law, 2000, 99);
    for (double v : draws) CHECK(v >= law.support_low());

    wfa::dist::KappaDist chi(6, 4, 0.0);
    auto d0 = sample_kappa_dist(chi, 10000, 4242);
    double mean = 0.0;
    for (double v : d0) mean += v;
    mean /= static_cast<double>(d0.size());
    double se = std::sqrt(20.0 / static_cast<double>(d0.size()));
    CHECK(std::fabs(mean - 10.0) <= 4.0 * se);
}

TEST_CASE("adequacy of the law against its own draws") {
    wfa::dist::KappaDist law(8, 8, 1.0);
    auto draws = sample_kappa_dist(law, 3000, 17);
    auto rep = adequacy(draws, law);
    CHECK(rep.count == 3000);
    CHECK(rep.ks_distance <= 1.63 / std::sqrt(3000.0));
    CHECK(std::fabs(rep.mean_gap) <= 4.0 * rep.mean_se);
    CHECK(std::fabs(rep.variance_gap) <= 4.0 * rep.variance_se);
    REQUIRE(rep.quantile_table.size() == 3);
    CHECK(rep.quantile_table[0].level == 0.90);
    for (const auto& row : rep.quantile_table)
        CHECK(std::fabs(row.empirical - row.analytic) <
              0.2 * std::sqrt(law.variance()));
}

TEST_CASE("adequacy of degenerate constant samples") {
    wfa::dist::KappaDist law(6, 4, 0.0);
    std::vector<double> constant(50, 10.0);
    auto rep = adequacy(constant, law);
    CHECK(rep.sample_variance == 0.0);
    CHECK(rep.variance_gap == law.variance());
    CHECK(rep.ks_distance >= 0.45);  // F(10) is near 1/2 for chi2_10
    CHECK(rep.mean_se == 0.0);
    CHECK_THROWS_AS(adequacy({}, law), wfa::InvalidInputError);
}

TEST_CASE("empirical quantiles interpolate order statistics") {
    std::vector<double> v = {1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(empirical_quantile(v, 0.0) == 1.0);
    CHECK(empirical_quantile(v, 1.0) == 5.0);
    CHECK(empirical_quantile(v, 0.5) == 3.0);
    CHECK(empirical_quantile(v, 0.625) == 3.5);
    CHECK_THROWS_AS(empirical_quantile({}, 0.5), wfa::InvalidInputError);
}
