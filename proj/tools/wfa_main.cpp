#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wfa/dist.hpp"
#include "wfa/dwt.hpp"
#include "wfa/errors.hpp"
#include "wfa/io.hpp"
#include "wfa/json_writer.hpp"
#include "wfa/kappa.hpp"
#include "wfa/mc.hpp"
#include "wfa/profiles.hpp"
#include "wfa/quadrature.hpp"
#include "wfa/shrink.hpp"

namespace {

using wfa::json::Value;

void emit(const std::string& content, const std::string& output_path) {
    if (output_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
    } else {
        wfa::io::write_file_atomic(output_path, content);
    }
}

std::vector<double> parse_curve_csv(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    std::vector<std::string> nonempty;
    for (auto& l : lines)
        if (!l.empty()) nonempty.push_back(l);
    if (nonempty.size() != 1)
        throw wfa::InvalidInputError(
            "expected a single CSV row of sample values, got " +
            std::to_string(nonempty.size()) + " rows");
    std::vector<double> curve;
    std::string cell;
    auto flush = [&] {
        std::string t = cell;
        while (!t.empty() && (t.front() == ' ' || t.front() == '\t'))
            t.erase(t.begin());
        while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
        double v = 0.0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || p != t.data() + t.size() || !std::isfinite(v))
            throw wfa::InvalidInputError("non-numeric cell '" + cell + "'");
        curve.push_back(v);
        cell.clear();
    };
    for (char c : nonempty[0]) {
        if (c == ',')
            flush();
        else
            cell.push_back(c);
    }
    flush();
    return curve;
}

struct TestArgs {
    std::string input, output;
    std::string wavelet = "haar";
    int levels = 0;
    std::string method = "exact";
    double alpha = 0.05;
    std::string df_mode = "fractional";
    std::string pad = "reflect";
    std::string rho = "zero";
};

int cmd_test(const TestArgs& a) {
    std::ifstream in(a.input);
    if (!in) throw wfa::InvalidInputError("cannot open input file: " + a.input);
    auto ps = wfa::profiles::load_profiles(in, wfa::profiles::parse_pad_mode(a.pad));

    wfa::kappa::TestConfig cfg;
    cfg.wavelet = a.wavelet;
    cfg.levels = a.levels;
    cfg.method = wfa::kappa::parse_method(a.method);
    cfg.alpha = a.alpha;
    cfg.df_mode = wfa::dist::parse_df_mode(a.df_mode);
    cfg.rho = wfa::profiles::parse_rho_policy(a.rho);

    auto rep = wfa::kappa::run_test(ps, cfg);

    std::vector<double> survivors, kept_ss, unthr_ss;
    for (const auto& pt : rep.statistic.per_treatment) {
        survivors.push_back(static_cast<double>(pt.survivors));
        kept_ss.push_back(pt.kept_sum_sq);
        unthr_ss.push_back(pt.unthresholded_sum_sq);
    }

    Value diag = Value::object();
    diag.set("treatments", ps.treatments())
        .set("length", ps.length)
        .set("padded_from", ps.padded_from.value_or(ps.length))
        .set("l_t", rep.l_t)
        .set("n_t", rep.n_t)
        .set("p_slots", rep.statistic.p)
        .set("q_slots", rep.statistic.q)
        .set("sigma_sq", rep.sigma_sq)
        .set("gamma_hat", Value::array(rep.gamma))
        .set("survivors", Value::array(survivors))
        .set("kept_sum_sq", Value::array(kept_ss))
        .set("unthresholded_sum_sq", Value::array(unthr_ss));

    Value doc = Value::object();
    doc.set("kappa", rep.statistic.value)
        .set("lambda", rep.statistic.lambda)
        .set("method", wfa::kappa::method_name(rep.method))
        .set("alpha", rep.alpha)
        .set("p", rep.law_p)
        .set("q", rep.law_q)
        .set("df", rep.df)
        .set("critical_value", rep.critical_value)
        .set("p_value", rep.p_value)
        .set("reject", rep.reject)
        .set("diagnostics", std::move(diag));
    emit(doc.dump(2), a.output);
    return 0;
}

struct DistArgs {
    double p = 0, q = 0, lambda = 0;
    std::string op;
    std::optional<double> at;
    std::string output;
};

int cmd_dist(const DistArgs& a) {
    Value doc = Value::object();
    doc.set("p", a.p).set("q", a.q).set("lambda", a.lambda).set("op", a.op);
    wfa::dist::KappaDist d(a.p, a.q, a.lambda);
    if (a.op == "moments") {
        const auto& m = d.moments();
        doc.set("mu", m.mu_coeff)
            .set("fourth", m.fourth)
            .set("mean", m.mean)
            .set("variance", m.variance);
    } else {
        if (!a.at)
            throw wfa::InvalidInputError("--at is required for op " + a.op);
        double at = *a.at;
        double value = 0.0;
        if (a.op == "pdf") {
            value = d.pdf(at);
        } else if (a.op == "cdf") {
            value = d.cdf(at);
        } else {
            if (!(at > 0.0 && at < 1.0))
                throw wfa::InvalidInputError("quantile requires --at in (0,1)");
            value = d.quantile(at);
        }
        doc.set("at", at).set("value", value);
    }
    emit(doc.dump(2), a.output);
    return 0;
}

struct SimArgs {
    std::size_t treatments = 2;
    std::size_t replicates = 5;
    std::size_t length = 128;
    std::string wavelet = "haar";
    int levels = 0;
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    std::string samples_out;
    std::string output;
};

int cmd_simulate(const SimArgs& a) {
    wfa::mc::SimSpec spec;
    spec.treatments = a.treatments;
    spec.replicates = a.replicates;
    spec.length = a.length;
    spec.wavelet = a.wavelet;
    spec.levels = a.levels;
    spec.reps = a.reps;
    spec.seed = a.seed;

    auto result = wfa::mc::simulate_null(spec);
    auto sr = wfa::mc::survivor_rate(result, spec);

    wfa::kappa::TestConfig lvl_cfg;
    lvl_cfg.wavelet = spec.wavelet;
    lvl_cfg.levels = spec.levels;
    const int l_t = wfa::kappa::effective_levels(lvl_cfg, spec.length);

    const std::size_t T = spec.treatments;
    const double lambda = result.lambda;
    const double q = static_cast<double>(T * result.n_t);
    const double p_slots = static_cast<double>(T * result.p_slots);

    wfa::dist::KappaDist exact_law(p_slots, q, lambda);
    const double mu = exact_law.moments().mu_coeff;
    const double binom_p = wfa::dist::binomial_df(T, spec.length, l_t);
    wfa::dist::ChiSquaredLaw binom_law(binom_p * mu + q);

    auto adequacy_exact = wfa::mc::adequacy(result.kappa, exact_law);
    auto adequacy_binom = wfa::mc::adequacy(result.kappa, binom_law);

    if (!a.samples_out.empty()) {
        std::string csv;
        csv.reserve(result.kappa.size() * 24);
        char buf[40];
        for (double v : result.kappa) {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
            csv += buf;
        }
        wfa::io::write_file_atomic(a.samples_out, csv);
    }

    auto gaps = [](const wfa::mc::AdequacyReport& r) {
        Value v = Value::object();
        v.set("mean_gap", r.mean_gap)
            .set("mean_se", r.mean_se)
            .set("variance_gap", r.variance_gap)
            .set("variance_se", r.variance_se);
        return v;
    };

    std::vector<double> levels, empirical, q_exact, q_binom;
    for (std::size_t i = 0; i < adequacy_exact.quantile_table.size(); ++i) {
        levels.push_back(adequacy_exact.quantile_table[i].level);
        empirical.push_back(adequacy_exact.quantile_table[i].empirical);
        q_exact.push_back(adequacy_exact.quantile_table[i].analytic);
        q_binom.push_back(adequacy_binom.quantile_table[i].analytic);
    }

    Value srj = Value::object();
    srj.set("pi", sr.pi)
        .set("expected", sr.expected)
        .set("se", sr.se)
        .set("observed_mean", Value::array(sr.observed_mean));

    Value ks = Value::object();
    ks.set("exact", adequacy_exact.ks_distance)
        .set("binom_chisq", adequacy_binom.ks_distance);

    Value mg = Value::object();
    mg.set("exact", gaps(adequacy_exact)).set("binom_chisq", gaps(adequacy_binom));

    Value qt = Value::object();
    qt.set("levels", Value::array(levels))
        .set("empirical", Value::array(empirical))
        .set("exact", Value::array(q_exact))
        .set("binom_chisq", Value::array(q_binom));

    Value laws = Value::object();
    {
        Value e = Value::object();
        e.set("p", p_slots)
            .set("q", q)
            .set("lambda", lambda)
            .set("mean", exact_law.mean())
            .set("variance", exact_law.variance());
        Value b = Value::object();
        b.set("df", binom_law.df())
            .set("binomial_p", binom_p)
            .set("mean", binom_law.mean())
            .set("variance", binom_law.variance());
        laws.set("exact", std::move(e)).set("binom_chisq", std::move(b));
    }

    Value doc = Value::object();
    doc.set("treatments", spec.treatments)
        .set("replicates", spec.replicates)
        .set("length", spec.length)
        .set("wavelet", spec.wavelet)
        .set("l_t", l_t)
        .set("n_t", result.n_t)
        .set("reps", spec.reps)
        .set("seed", static_cast<unsigned long long>(spec.seed))
        .set("lambda", lambda)
        .set("sample_mean", adequacy_exact.sample_mean)
        .set("sample_variance", adequacy_exact.sample_variance)
        .set("survivor_rate", std::move(srj))
        .set("ks_distance", std::move(ks))
        .set("moment_gaps", std::move(mg))
        .set("quantile_table", std::move(qt))
        .set("laws", std::move(laws));
    emit(doc.dump(2), a.output);
    return 0;
}

struct DwtArgs {
    std::string input, output;
    std::string wavelet = "haar";
    int j0 = 0;
    std::string pad = "none";
    bool roundtrip = false;
};

int cmd_dwt(const DwtArgs& a) {
    auto curve = parse_curve_csv(wfa::io::read_file(a.input));
    const std::size_t original = curve.size();
    if (!wfa::dwt::is_power_of_two(curve.size())) {
        auto mode = wfa::profiles::parse_pad_mode(a.pad);
        if (mode == wfa::profiles::PadMode::none)
            throw wfa::InvalidInputError(
                "length not a power of two (n = " + std::to_string(original) +
                "); pass --pad zero|reflect");
        std::size_t target = 1;
        while (target < curve.size()) target <<= 1;
        for (std::size_t k = curve.size(); k < target; ++k)
            curve.push_back(mode == wfa::profiles::PadMode::zero
                                ? 0.0
                                : curve[2 * original - 1 - k]);
    }

    auto filter = wfa::dwt::make_filter(a.wavelet);
    auto d = wfa::dwt::dwt_forward(curve, filter, a.j0);

    Value::Array arr;
    for (std::size_t b = 0; b < d.details.size(); ++b) {
        Value blk = Value::object();
        blk.set("level", d.levels - 1 - static_cast<int>(b))
            .set("kind", "detail")
            .set("coefficients", Value::array(d.details[b]));
        arr.push_back(std::move(blk));
    }
    {
        Value blk = Value::object();
        blk.set("level", d.coarsest)
            .set("kind", "scaling")
            .set("coefficients", Value::array(d.scaling));
        arr.push_back(std::move(blk));
    }

    Value doc = Value::object();
    doc.set("n", curve.size())
        .set("padded_from", original)
        .set("wavelet", a.wavelet)
        .set("j0", a.j0)
        .set("levels", Value(std::move(arr)))
        .set("flattened", Value::array(wfa::dwt::flatten(d)));
    if (a.roundtrip) {
        auto back = wfa::dwt::dwt_inverse(d, filter);
        double err = 0.0;
        for (std::size_t k = 0; k < curve.size(); ++k)
            err = std::max(err, std::fabs(back[k] - curve[k]));
        doc.set("roundtrip_max_error", err);
    }
    emit(doc.dump(2), a.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* tol = std::getenv("WFA_QUAD_TOL")) {
        try {
            wfa::quad::set_default_tolerance(std::stod(tol));
        } catch (const std::exception&) {
            std::cerr << "wfa: invalid WFA_QUAD_TOL value '" << tol << "'\n";
            return 2;
        }
    }

    CLI::App app{"wavelet-domain test for equality of treatment mean curves"};
    app.require_subcommand(1);

    TestArgs ta;
    auto* t = app.add_subcommand("test", "run the curve-equality test on CSV data");
    t->add_option("--input", ta.input, "profiles CSV")->required();
    t->add_option("--output", ta.output, "write the JSON report here");
    t->add_option("--wavelet", ta.wavelet)->check(CLI::IsMember({"haar", "d4", "d8"}));
    t->add_option("--levels", ta.levels, "thresholded detail levels l_t (0 = all)");
    t->add_option("--method", ta.method)
        ->check(CLI::IsMember({"exact", "normal", "chisq", "binom-normal", "binom-chisq"}));
    t->add_option("--alpha", ta.alpha)->check(CLI::Range(1e-12, 1.0 - 1e-12));
    t->add_option("--df-mode", ta.df_mode)->check(CLI::IsMember({"ceil", "fractional"}));
    t->add_option("--pad", ta.pad)->check(CLI::IsMember({"none", "zero", "reflect"}));
    t->add_option("--rho", ta.rho)->check(CLI::IsMember({"zero", "empirical"}));

    DistArgs da;
    auto* ds = app.add_subcommand("dist", "evaluate the null law");
    ds->add_option("--p", da.p, "thresholded degrees of freedom")->required();
    ds->add_option("--q", da.q, "unthresholded degrees of freedom")->required();
    ds->add_option("--lambda", da.lambda, "threshold");
    ds->add_option("--op", da.op)
        ->required()
        ->check(CLI::IsMember({"pdf", "cdf", "quantile", "moments"}));
    double at_val = 0.0;
    auto* at_opt = ds->add_option("--at", at_val, "evaluation point");
    ds->add_option("--output", da.output);

    SimArgs sa;
    auto* sim = app.add_subcommand(
        "simulate", "Monte Carlo null simulation and adequacy report");
    sim->add_option("--treatments", sa.treatments)
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
    sim->add_option("--replicates", sa.replicates)->check(CLI::PositiveNumber);
    sim->add_option("--length", sa.length)->check(CLI::PositiveNumber);
    sim->add_option("--wavelet", sa.wavelet)->check(CLI::IsMember({"haar", "d4", "d8"}));
    sim->add_option("--levels", sa.levels);
    sim->add_option("--reps", sa.reps)->check(CLI::PositiveNumber);
    sim->add_option("--seed", sa.seed);
    sim->add_option("--samples-out", sa.samples_out, "raw kappa samples CSV");
    sim->add_option("--output", sa.output);

    DwtArgs wa;
    auto* dw = app.add_subcommand("dwt", "decompose a single curve");
    dw->add_option("--input", wa.input, "single-row CSV of samples")->required();
    dw->add_option("--wavelet", wa.wavelet)->check(CLI::IsMember({"haar", "d4", "d8"}));
    dw->add_option("--j0", wa.j0, "coarsest retained level");
    dw->add_option("--pad", wa.pad)->check(CLI::IsMember({"none", "zero", "reflect"}));
    dw->add_flag("--roundtrip", wa.roundtrip, "report max reconstruction error");
    dw->add_option("--output", wa.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (t->parsed()) return cmd_test(ta);
        if (ds->parsed()) {
            if (at_opt->count() > 0) da.at = at_val;
            return cmd_dist(da);
        }
        if (sim->parsed()) return cmd_simulate(sa);
        if (dw->parsed()) return cmd_dwt(wa);
    } catch (const wfa::InvalidInputError& e) {
        std::cerr << "wfa: " << e.what() << "\n";
        return 2;
    } catch (const wfa::NumericError& e) {
        std::cerr << "wfa: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "wfa: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
