#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace semmut {

double normal_cdf(double z);
double normal_sf(double z);
double chi_square_sf(double x, double df);

// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> midranks(std::span<const double> v);

double mean(std::span<const double> v);
double median(std::span<const double> v);
double population_sd(std::span<const double> v);

// (#{a > b} - #{a < b}) / (|a| |b|)
double cliffs_delta(std::span<const double> a, std::span<const double> b);

bool rank_invariance_check(std::span<const double> a, std::span<const double> b,
                           const std::function<double(double)>& monotone_map);

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
};

// Percentile bootstrap of delta, both groups resampled with replacement.
ConfidenceInterval bootstrap_ci(std::span<const double> a, std::span<const double> b, int iterations,
                                std::uint64_t seed);

enum class EffectClass { negligible, small, medium, large };
std::string_view to_string(EffectClass c);

// |delta| >= 0.474 large, >= 0.330 medium, >= 0.147 small.
EffectClass romano_classify(double delta);

struct OddsRatios {
    double nonzero_odds_ratio = 1.0;  // +0.5 on every cell
    double median_ratio = 1.0;        // +inf when median(cross) = 0 < median(aligned); NaN for 0/0
};

OddsRatios odds_ratios(std::span<const double> aligned, std::span<const double> cross);

struct SignTestResult {
    int positives = 0;
    int total = 0;
    double p_value = 1.0;
};

// One-sided exact binomial; zeros count as non-positive.
SignTestResult sign_test(std::span<const double> deltas);

double coefficient_of_variation(std::span<const double> v);

struct FriedmanResult {
    double chi2 = 0.0;
    double p_value = 1.0;
    double kendalls_w = 0.0;
    std::vector<double> rank_means;
};

// rows = blocks (n), columns = treatments (k).
FriedmanResult friedman(const std::vector<std::vector<double>>& rows);

std::vector<double> bonferroni(std::span<const double> pvals, int m);

struct CorrelationResult {
    double rho = 0.0;
    double tau = 0.0;
    double p_rho = 1.0;
    double p_tau = 1.0;
};

// Two-sided permutation p-values: exact for n <= 8, otherwise Monte Carlo
// with `permutations` draws.
CorrelationResult spearman_kendall(std::span<const double> x, std::span<const double> y,
                                   std::uint64_t seed = 42, int permutations = 10000);

std::vector<bool> bh_fdr(std::span<const double> pvals, double alpha);

enum class PowerMode { plugin, stipulated };
std::string_view to_string(PowerMode m);

struct PowerReport {
    PowerMode mode = PowerMode::plugin;
    std::vector<std::pair<double, double>> powers;  // (threshold, power)
    std::optional<double> target;
    std::optional<double> mixture_weight;
    std::optional<double> realized_expected_delta;
    std::optional<double> point_power;  // P(delta_hat >= target)
    std::optional<double> ci_power;     // P(bootstrap CI low > 0)
    int n_sim = 0;
    std::uint64_t seed = 0;
};

inline constexpr double kRomanoThresholds[] = {0.0, 0.147, 0.330, 0.474};

PowerReport power_plugin(std::span<const double> aligned, std::span<const double> cross,
                         std::span<const double> thresholds, int n_sim, std::uint64_t seed);

// Aligned draws are shifted by +0.001 with probability w; w is found by
// bisection so that the mean resampled delta hits target_delta.
PowerReport power_stipulated(std::span<const double> aligned, std::span<const double> cross, double target_delta,
                             int n_sim, std::uint64_t seed, int inner_bootstrap = 200);

enum class HypothesisVerdict { met, not_met, partial };
std::string_view to_string(HypothesisVerdict v);

struct HypothesisInputs {
    // nonequivalent[put][operator]: mutants neither equivalent nor rejected.
    std::vector<std::vector<int>> nonequivalent;
    std::vector<double> aligned_sms, cross_sms;
    std::vector<double> class_deltas;  // per class: mean aligned - mean cross
    std::vector<double> suspect_shares;
};

struct HypothesisVerdicts {
    HypothesisVerdict h1 = HypothesisVerdict::not_met;
    int h1_puts_meeting = 0;
    HypothesisVerdict h2 = HypothesisVerdict::not_met;
    double h2_odds_ratio = 0.0;
    double h2_delta = 0.0;
    HypothesisVerdict h3 = HypothesisVerdict::not_met;
    int h3_positives = 0;
    int h3_total = 0;
    std::optional<double> h3_cv;
    HypothesisVerdict h4 = HypothesisVerdict::not_met;
    double h4_mean_suspect_share = 0.0;
};

HypothesisVerdicts evaluate_hypotheses(const HypothesisInputs& in);

}  // namespace semmut
