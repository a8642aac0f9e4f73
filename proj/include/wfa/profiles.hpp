#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wfa::profiles {

enum class PadMode { none, zero, reflect };
enum class RhoPolicy { zero, empirical };

PadMode parse_pad_mode(const std::string& s);
RhoPolicy parse_rho_policy(const std::string& s);

// T treatments x r_i replicates x n samples of noisy curves. Curve length is
// a power of two (after optional padding at load time).
struct ProfileSet {
    std::vector<std::string> treatment_ids;
    std::vector<std::vector<std::string>> replicate_ids;
    std::vector<std::vector<std::vector<double>>> values;  // [i][j][k]
    std::size_t length = 0;
    std::optional<std::size_t> padded_from;

    std::size_t treatments() const { return values.size(); }
    std::size_t replicate_count(std::size_t i) const { return values[i].size(); }
};

// Builds a validated ProfileSet from in-memory curves (already padded).
ProfileSet from_values(std::vector<std::vector<std::vector<double>>> values);

// Reads the CSV schema `treatment,replicate,x1..xn` (header required, one
// curve per row). With pad_mode zero/reflect, curves whose length is not a
// power of two are extended to the next power of two.
ProfileSet load_profiles(std::istream& in, PadMode pad_mode);

struct GroupSummary {
    std::vector<std::vector<double>> group_means;       // T x n
    std::vector<double> grand_mean;                     // n
    double residual_variance = 0.0;                     // pooled sigma^2 hat
    std::vector<std::vector<double>> cross_covariances; // T x T, rho_ij
};

// Per-treatment replicate means, their unweighted grand mean, the pooled
// residual variance (divisor sum_i (r_i - 1) * n), and rho_ij per policy.
GroupSummary summarize(const ProfileSet& ps, RhoPolicy rho = RhoPolicy::zero);

// Variance of the contrast mean_i - grand mean for treatment i:
//   sigma^2 [ (1/r_i)(t-2)/t + (1/t^2) sum_j 1/r_j ] - (2/t) mean_{j!=i} rho_ij
// Throws InvalidInputError when the result is not positive.
double gamma_hat(const GroupSummary& gs, const ProfileSet& ps, std::size_t i);

struct VarianceEstimate {
    std::vector<double> gamma;  // per treatment, all > 0
    double sigma_sq = 0.0;
    RhoPolicy rho_policy = RhoPolicy::zero;
};

VarianceEstimate estimate_variance(const GroupSummary& gs, const ProfileSet& ps,
                                   RhoPolicy rho = RhoPolicy::zero);

// (mean_i - grand mean) / sqrt(gamma_i); entries are approximately N(0,1)
// under the no-difference hypothesis.
std::vector<double> standardized_contrast(const GroupSummary& gs,
                                          const VarianceEstimate& ve,
                                          std::size_t i);

}  // namespace wfa::profiles
