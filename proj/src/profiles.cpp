#include "wfa/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>

#include "wfa/dwt.hpp"
#include "wfa/errors.hpp"

namespace wfa::profiles {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

double parse_number(const std::string& cell, std::size_t row, std::size_t col) {
    std::string t = cell;
    // from_chars does not skip whitespace
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.erase(t.begin());
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.pop_back();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
        throw InvalidInputError("non-numeric cell '" + cell + "' at row " +
                                std::to_string(row) + ", column " +
                                std::to_string(col));
    return v;
}

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void pad_curve(std::vector<double>& curve, std::size_t target, PadMode mode) {
    const std::size_t n = curve.size();
    if (n == target) return;
    curve.reserve(target);
    if (mode == PadMode::zero) {
        curve.resize(target, 0.0);
    } else {
        // reflect: append the reversed tail
        for (std::size_t k = 0; k < target - n; ++k)
            curve.push_back(curve[n - 1 - k]);
    }
}

void validate_values(const std::vector<std::vector<std::vector<double>>>& values) {
    if (values.size() < 2)
        throw InvalidInputError("need at least 2 treatments");
    std::size_t n = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].empty())
            throw InvalidInputError("treatment " + std::to_string(i) +
                                    " has no replicates");
        for (const auto& curve : values[i]) {
            if (n == 0) n = curve.size();
            if (curve.size() != n)
                throw InvalidInputError("curves have inconsistent lengths");
            for (double v : curve)
                if (!std::isfinite(v))
                    throw InvalidInputError("curve contains a non-finite value");
        }
    }
    if (!dwt::is_power_of_two(n))
        throw InvalidInputError("length not a power of two");
}

}  // namespace

PadMode parse_pad_mode(const std::string& s) {
    if (s == "none") return PadMode::none;
    if (s == "zero") return PadMode::zero;
    if (s == "reflect") return PadMode::reflect;
    throw InvalidInputError("unknown pad mode: " + s);
}

RhoPolicy parse_rho_policy(const std::string& s) {
    if (s == "zero") return RhoPolicy::zero;
    if (s == "empirical") return RhoPolicy::empirical;
    throw InvalidInputError("unknown rho policy: " + s);
}

ProfileSet from_values(std::vector<std::vector<std::vector<double>>> values) {
    validate_values(values);
    ProfileSet ps;
    ps.length = values[0][0].size();
    ps.values = std::move(values);
    ps.treatment_ids.resize(ps.values.size());
    ps.replicate_ids.resize(ps.values.size());
    for (std::size_t i = 0; i < ps.values.size(); ++i) {
        ps.treatment_ids[i] = "t" + std::to_string(i + 1);
        for (std::size_t j = 0; j < ps.values[i].size(); ++j)
            ps.replicate_ids[i].push_back("r" + std::to_string(j + 1));
    }
    return ps;
}

ProfileSet load_profiles(std::istream& in, PadMode pad_mode) {
    std::string line;
    if (!std::getline(in, line))
        throw InvalidInputError("empty input: missing CSV header");
    auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "treatment" || header[1] != "replicate")
        throw InvalidInputError(
            "CSV header must start with 'treatment,replicate' followed by "
            "sample columns");
    const std::size_t n_raw = header.size() - 2;

    ProfileSet ps;
    std::map<std::string, std::size_t> index;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw InvalidInputError("ragged row " + std::to_string(row) +
                                    ": expected " + std::to_string(header.size()) +
                                    " cells, got " + std::to_string(cells.size()));
        std::vector<double> curve(n_raw);
        for (std::size_t k = 0; k < n_raw; ++k)
            curve[k] = parse_number(cells[k + 2], row, k + 3);
        auto it = index.find(cells[0]);
        std::size_t i;
        if (it == index.end()) {
            i = ps.values.size();
            index.emplace(cells[0], i);
            ps.treatment_ids.push_back(cells[0]);
            ps.replicate_ids.emplace_back();
            ps.values.emplace_back();
        } else {
            i = it->second;
        }
        ps.replicate_ids[i].push_back(cells[1]);
        ps.values[i].push_back(std::move(curve));
    }
    if (ps.values.size() < 2)
        throw InvalidInputError("need at least 2 treatments, got " +
                                std::to_string(ps.values.size()));

    std::size_t target = n_raw;
    if (!dwt::is_power_of_two(n_raw)) {
        if (pad_mode == PadMode::none)
            throw InvalidInputError("length not a power of two (n = " +
                                    std::to_string(n_raw) +
                                    "); use a pad mode to extend");
        target = next_power_of_two(n_raw);
        for (auto& group : ps.values)
            for (auto& curve : group) pad_curve(curve, target, pad_mode);
        ps.padded_from = n_raw;
    }
    ps.length = target;
    validate_values(ps.values);
    return ps;
}

GroupSummary summarize(const ProfileSet& ps, RhoPolicy rho) {
    const std::size_t T = ps.treatments();
    const std::size_t n = ps.length;
    GroupSummary gs;
    gs.group_means.assign(T, std::vector<double>(n, 0.0));
    gs.grand_mean.assign(n, 0.0);
    for (std::size_t i = 0; i < T; ++i) {
        const auto& group = ps.values[i];
        for (const auto& curve : group)
            for (std::size_t k = 0; k < n; ++k) gs.group_means[i][k] += curve[k];
        for (std::size_t k = 0; k < n; ++k)
            gs.group_means[i][k] /= static_cast<double>(group.size());
        for (std::size_t k = 0; k < n; ++k)
            gs.grand_mean[k] += gs.group_means[i][k];
    }
    for (std::size_t k = 0; k < n; ++k)
        gs.grand_mean[k] /= static_cast<double>(T);

    // pooled residual variance, unbiased divisor sum_i (r_i - 1) * n
    double ss = 0.0;
    std::size_t dof = 0;
    for (std::size_t i = 0; i < T; ++i) {
        const auto& group = ps.values[i];
        for (const auto& curve : group)
            for (std::size_t k = 0; k < n; ++k) {
                double r = curve[k] - gs.group_means[i][k];
                ss += r * r;
            }
        dof += (group.size() - 1) * n;
    }
    gs.residual_variance = dof > 0 ? ss / static_cast<double>(dof) : 0.0;

    gs.cross_covariances.assign(T, std::vector<double>(T, 0.0));
    if (rho == RhoPolicy::empirical && n >= 2) {
        std::vector<double> time_mean(T, 0.0);
        for (std::size_t i = 0; i < T; ++i) {
            for (double v : gs.group_means[i]) time_mean[i] += v;
            time_mean[i] /= static_cast<double>(n);
        }
        for (std::size_t i = 0; i < T; ++i)
            for (std::size_t j = i; j < T; ++j) {
                double c = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    c += (gs.group_means[i][k] - time_mean[i]) *
                         (gs.group_means[j][k] - time_mean[j]);
                c /= static_cast<double>(n - 1);
                gs.cross_covariances[i][j] = c;
                gs.cross_covariances[j][i] = c;
            }
    }
    return gs;
}

double gamma_hat(const GroupSummary& gs, const ProfileSet& ps, std::size_t i) {
    const std::size_t T = ps.treatments();
    if (i >= T) throw InvalidInputError("gamma_hat: treatment index out of range");
    const double t = static_cast<double>(T);
    double inv_r_sum = 0.0;
    for (std::size_t j = 0; j < T; ++j)
        inv_r_sum += 1.0 / static_cast<double>(ps.replicate_count(j));
    const double r_i = static_cast<double>(ps.replicate_count(i));
    double rho_bar = 0.0;
    for (std::size_t j = 0; j < T; ++j)
        if (j != i) rho_bar += gs.cross_covariances[i][j];
    rho_bar /= (t - 1.0);
    double g = gs.residual_variance *
                   ((1.0 / r_i) * ((t - 2.0) / t) + inv_r_sum / (t * t)) -
               (2.0 / t) * rho_bar;
    if (!(g > 0.0))
        throw InvalidInputError(
            "invalid normalizer: gamma_hat <= 0 for treatment " +
            std::to_string(i) + " (degenerate data or pathological rho)");
    return g;
}

VarianceEstimate estimate_variance(const GroupSummary& gs, const ProfileSet& ps,
                                   RhoPolicy rho) {
    VarianceEstimate ve;
    ve.sigma_sq = gs.residual_variance;
    ve.rho_policy = rho;
    ve.gamma.resize(ps.treatments());
    for (std::size_t i = 0; i < ps.treatments(); ++i)
        ve.gamma[i] = gamma_hat(gs, ps, i);
    return ve;
}

std::vector<double> standardized_contrast(const GroupSummary& gs,
                                          const VarianceEstimate& ve,
                                          std::size_t i) {
    if (i >= ve.gamma.size())
        throw InvalidInputError("standardized_contrast: index out of range");
    const double scale = 1.0 / std::sqrt(ve.gamma[i]);
    std::vector<double> out(gs.grand_mean.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = (gs.group_means[i][k] - gs.grand_mean[k]) * scale;
    return out;
}

}  // namespace wfa::profiles
