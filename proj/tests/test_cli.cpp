#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "wfa/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("WFA_CLI_BIN");
    return p ? std::string(p) : std::string();
}

fs::path work_dir() {
    static fs::path dir = [] {
        auto d = fs::temp_directory_path() /
                 ("wfa_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    auto out_file = work_dir() / "stdout.txt";
    std::string cmd = cli_path() + " " + args + " > " + out_file.string() +
                      " 2> " + (work_dir() / "stderr.txt").string();
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(out_file);
    r.out.assign(std::istreambuf_iterator<char>(in),
                 std::istreambuf_iterator<char>());
    return r;
}

void write_fixture(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

const char* kProfiles =
    "treatment,replicate,x1,x2,x3,x4,x5,x6,x7,x8\n"
    "a,1,1.0,2.0,1.5,0.5,1.1,0.9,1.3,0.7\n"
    "a,2,0.8,1.9,1.7,0.4,1.0,1.1,1.2,0.8\n"
    "a,3,1.2,2.1,1.4,0.6,1.2,0.8,1.4,0.6\n"
    "b,1,1.1,2.2,1.6,0.6,1.0,1.0,1.2,0.9\n"
    "b,2,0.9,2.0,1.5,0.5,1.2,0.9,1.3,0.6\n"
    "b,3,1.0,1.8,1.8,0.3,1.1,1.0,1.1,0.8\n";

std::set<std::string> keys_of(const json& j) {
    std::set<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
    return keys;
}

}  // namespace

TEST_CASE("cli contract") {
    if (cli_path().empty()) {
        MESSAGE("WFA_CLI_BIN not set; skipping CLI tests");
        return;
    }
    auto dir = work_dir();
    auto csv = dir / "profiles.csv";
    write_fixture(csv, kProfiles);
    auto curve = dir / "curve.csv";
    write_fixture(curve, "1,1,1,1\n");

    SUBCASE("test emits a complete report and exit 0 regardless of decision") {
        auto r = run_cli("test --input " + csv.string() +
                         " --method chisq --alpha 0.05");
        REQUIRE(r.exit_code == 0);
        auto j = json::parse(r.out);
        CHECK(keys_of(j) ==
              std::set<std::string>{"kappa", "lambda", "method", "alpha", "p",
                                    "q", "df", "critical_value", "p_value",
                                    "reject", "diagnostics"});
        CHECK(j["method"] == "chisq");
        CHECK(j["p_value"].is_number());
        CHECK(j["reject"].is_boolean());
        auto d = j["diagnostics"];
        for (const char* key :
             {"treatments", "length", "padded_from", "l_t", "n_t", "p_slots",
              "q_slots", "sigma_sq", "gamma_hat", "survivors", "kept_sum_sq",
              "unthresholded_sum_sq"})
            CHECK(d.contains(key));
    }

    SUBCASE("identical data, different method: same kappa, different p-value") {
        auto a = run_cli("test --input " + csv.string() + " --method exact");
        auto b = run_cli("test --input " + csv.string() + " --method binom-chisq");
        REQUIRE(a.exit_code == 0);
        REQUIRE(b.exit_code == 0);
        auto ja = json::parse(a.out), jb = json::parse(b.out);
        CHECK(ja["kappa"] == jb["kappa"]);
        CHECK(ja["p_value"] != jb["p_value"]);
    }

    SUBCASE("test runs are byte-identical") {
        auto a = run_cli("test --input " + csv.string());
        auto b = run_cli("test --input " + csv.string());
        CHECK(a.out == b.out);
    }

    SUBCASE("dist ops") {
        auto pdf = run_cli("dist --p 2 --q 2 --lambda 0 --op pdf --at 4");
        REQUIRE(pdf.exit_code == 0);
        auto j = json::parse(pdf.out);
        CHECK(keys_of(j) ==
              std::set<std::string>{"p", "q", "lambda", "op", "at", "value"});
        CHECK(std::fabs(j["value"].get<double>() - 0.13533528323661269) < 1e-10);

        auto mom = run_cli("dist --p 6 --q 4 --lambda 0 --op moments");
        auto jm = json::parse(mom.out);
        CHECK(jm["mean"].get<double>() == 10.0);
        CHECK(jm["variance"].get<double>() == 20.0);
        CHECK(jm.contains("mu"));
        CHECK(jm.contains("fourth"));

        auto qv = run_cli("dist --p 6 --q 4 --lambda 0 --op quantile --at 0.95");
        auto jq = json::parse(qv.out);
        CHECK(std::fabs(jq["value"].get<double>() - 18.307038053275147) < 1e-3);

        CHECK(run_cli("dist --p 6 --q 4 --op quantile --at 1.5").exit_code == 2);
        CHECK(run_cli("dist --p -1 --q 4 --op pdf --at 1").exit_code == 2);
        CHECK(run_cli("dist --p 6 --q 4 --op pdf").exit_code == 2);
    }

    SUBCASE("simulate is seed-deterministic byte for byte") {
        auto s1 = dir / "s1.csv";
        auto s2 = dir / "s2.csv";
        auto r1 = run_cli("simulate --reps 60 --seed 7 --samples-out " +
                          s1.string());
        auto r2 = run_cli("simulate --reps 60 --seed 7 --samples-out " +
                          s2.string());
        REQUIRE(r1.exit_code == 0);
        REQUIRE(r2.exit_code == 0);
        CHECK(r1.out == r2.out);
        CHECK(wfa::io::read_file(s1.string()) ==
              wfa::io::read_file(s2.string()));
        CHECK(!wfa::io::read_file(s1.string()).empty());

        auto j = json::parse(r1.out);
        for (const char* key : {"ks_distance", "moment_gaps", "quantile_table",
                                "survivor_rate", "lambda", "laws"})
            CHECK(j.contains(key));
        CHECK(j["ks_distance"].contains("exact"));
        CHECK(j["ks_distance"].contains("binom_chisq"));
        CHECK(j["moment_gaps"]["exact"].contains("mean_gap"));
        CHECK(j["quantile_table"]["levels"].size() == 3);

        auto r3 = run_cli("simulate --reps 60 --seed 8");
        CHECK(json::parse(r3.out)["sample_mean"] != j["sample_mean"]);
    }

    SUBCASE("dwt decomposition of a constant curve") {
        auto r = run_cli("dwt --input " + curve.string() + " --roundtrip");
        REQUIRE(r.exit_code == 0);
        auto j = json::parse(r.out);
        CHECK(j["n"] == 4);
        CHECK(j["levels"].size() == 3);  // two detail blocks plus scaling
        auto flat = j["flattened"].get<std::vector<double>>();
        REQUIRE(flat.size() == 4);
        CHECK(std::fabs(flat[0]) < 1e-12);
        CHECK(std::fabs(flat[1]) < 1e-12);
        CHECK(std::fabs(flat[2]) < 1e-12);
        CHECK(std::fabs(flat[3] - 2.0) < 1e-12);
        CHECK(j["roundtrip_max_error"].get<double>() <= 1e-10);
    }

    SUBCASE("induced failures return the specified exit codes") {
        CHECK(run_cli("test --input " + (dir / "missing.csv").string())
                  .exit_code == 2);
        CHECK(run_cli("simulate --reps 0").exit_code == 2);
        auto bad_curve = dir / "bad.csv";
        write_fixture(bad_curve, "1,2,3,4,5,6\n");
        CHECK(run_cli("dwt --input " + bad_curve.string()).exit_code == 2);
        CHECK(run_cli("dwt --input " + bad_curve.string() + " --pad zero")
                  .exit_code == 0);
        CHECK(run_cli("dwt --input " + curve.string() + " --j0 9").exit_code ==
              2);
        CHECK(run_cli("test --input " + csv.string() + " --method bogus")
                  .exit_code == 2);
        CHECK(run_cli("frobnicate").exit_code == 2);
    }

    SUBCASE("levels flag drives the partition") {
        auto r = run_cli("test --input " + csv.string() + " --levels 1");
        REQUIRE(r.exit_code == 0);
        auto j = json::parse(r.out);
        CHECK(j["diagnostics"]["l_t"] == 1);
        CHECK(j["diagnostics"]["n_t"] == 4);  // n = 8
        CHECK(run_cli("test --input " + csv.string() + " --levels 9")
                  .exit_code == 2);
    }

    SUBCASE("quadrature tolerance env var is validated") {
        auto bad = run_cli("dist --p 2 --q 2 --op pdf --at 4");
        CHECK(bad.exit_code == 0);
        std::string saved = cli_path();
        int rc = std::system(("WFA_QUAD_TOL=banana " + saved +
                              " dist --p 2 --q 2 --op pdf --at 4 >/dev/null 2>&1")
                                 .c_str());
        CHECK(WEXITSTATUS(rc) == 2);
        rc = std::system(("WFA_QUAD_TOL=1e-8 " + saved +
                          " dist --p 2 --q 2 --op pdf --at 4 >/dev/null 2>&1")
                             .c_str());
        CHECK(WEXITSTATUS(rc) == 0);
    }

    SUBCASE("no partial output file is left on failure") {
        auto bad = dir / "ragged.csv";
        write_fixture(bad,
                      "treatment,replicate,x1,x2\na,1,1,2\nb,1,1\n");
        auto out = dir / "report.json";
        auto r = run_cli("test --input " + bad.string() + " --output " +
                         out.string());
        CHECK(r.exit_code == 2);
        CHECK(!fs::exists(out));

        auto ok = run_cli("test --input " + csv.string() + " --output " +
                          out.string());
        CHECK(ok.exit_code == 0);
        CHECK(fs::exists(out));
        CHECK(json::parse(wfa::io::read_file(out.string())).contains("kappa"));
    }
}
