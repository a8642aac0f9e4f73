// Compares the serial reference path against the OpenMP path for the two
// data-parallel kernels: null-pipeline simulation and inverse-CDF sampling.
// Outputs are required to be bit-identical; only wall time may differ.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wfa/dist.hpp"
#include "wfa/mc.hpp"
#include "wfa/parallel.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

template <class F>
double timed(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds_since(t0);
}

void report(const char* kernel, double serial_s, double parallel_s,
            bool identical) {
    std::printf("%-22s %10.3f ms %10.3f ms %7.2fx   %s\n", kernel,
                serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
                identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    std::size_t reps = 2000;
    std::size_t draws = 50000;
    std::uint64_t seed = 12345;
    app.add_option("--reps", reps, "simulation replications");
    app.add_option("--draws", draws, "inverse-CDF draws");
    app.add_option("--seed", seed);
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d\n\n", wfa::max_threads());
    std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "openmp",
                "speedup");

    {
        wfa::mc::SimSpec spec;
        spec.treatments = 3;
        spec.replicates = 10;
        spec.length = 256;
        spec.reps = reps;
        spec.seed = seed;
        wfa::mc::SimResult rs, rp;
        double ts = timed([&] { rs = simulate_null(spec, wfa::ExecMode::serial); });
        double tp = timed([&] { rp = simulate_null(spec, wfa::ExecMode::parallel); });
        report("simulate_null", ts, tp,
               rs.kappa == rp.kappa && rs.survivors == rp.survivors);
    }

    {
        wfa::dist::KappaDist law(16, 16, 2.0);
        std::vector<double> ds, dp;
        double ts = timed([&] {
            ds = wfa::mc::sample_kappa_dist(law, draws, seed, wfa::ExecMode::serial);
        });
        double tp = timed([&] {
            dp = wfa::mc::sample_kappa_dist(law, draws, seed, wfa::ExecMode::parallel);
        });
        report("sample_kappa_dist", ts, tp, ds == dp);
    }
    return 0;
}
