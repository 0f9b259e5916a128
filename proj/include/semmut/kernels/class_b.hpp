#pragma once

#include "semmut/program.hpp"

namespace semmut::kernels {

// B1: Beta(alpha = x, beta) prior, k successes in n trials, posterior mean.
enum class PosteriorEstimator { mean, mode, median_approx, mle, odds, float_mean, monte_carlo, quadrature, geometric };

struct BetaBinomialParams {
    double beta = 3.0;
    int trials = 20;
    int successes = 12;
    double success_pseudo = 0.0;
    int extra_trials = 0;
    double alpha_offset = 0.0;
    bool unnormalised = false;
    bool swap_prior = false;
    bool reciprocal_alpha = false;
    double prior_scale = 1.0;
    double data_weight = 1.0;
    PosteriorEstimator estimator = PosteriorEstimator::mean;
    bool failures_as_successes = false;
    bool double_count = false;
    bool ignore_prior_above_5 = false;
    int success_cap = -1;
    double normaliser_drift = 0.0;  // mean uses b * (1 + drift)
    bool reflect_alpha = false;     // alpha -> 10.5 - x
    double alpha_cap = 0.0;         // > 0 caps alpha
};

inline constexpr int kBetaMean = 0;
inline constexpr int kBetaSequential = 1;
inline constexpr int kBetaSwapped = 2;
inline constexpr int kBetaPriorMean = 3;
inline constexpr int kBetaMle = 4;

double log_beta(double a, double b);
Program make_beta_binomial(const BetaBinomialParams& p = {});

// B2: random-walk Metropolis on N(x, 1), started at x - 3.
enum class Proposal { gaussian, uniform, independence, langevin, exact_draws };
enum class TargetDensity { gaussian, laplace, squared_ratio };

struct MetropolisParams {
    double step = 1.0;
    int burn_in = 200;
    int base_length = 1000;
    double start_offset = -3.0;
    double acceptance_cap = 1.0;
    double target_shift = 0.0;
    double target_scale = 1.0;      // target mean = scale * x + shift
    double proposal_drift = 0.0;
    double precision_scale = 1.0;   // multiplies (theta - mu)^2
    Proposal proposal = Proposal::gaussian;
    TargetDensity target = TargetDensity::gaussian;
    bool inverted_acceptance = false;
    bool always_move = false;
    bool include_burn_in = false;
    bool fixed_stream = false;
    bool divide_by_n_plus_one = false;
    int restart_every = 0;
    double forgetting = 0.0;  // > 0 replaces the mean by an exponential average
    bool skip_first_acceptance = false;
};

inline constexpr int kChainMean = 0;
inline constexpr int kChainRejectCoarse = 1;  // rejection rate, step 0.02, started at x
inline constexpr int kChainRejectFine = 2;    // rejection rate, step 0.01, started at x
inline constexpr int kChainSecondMoment = 3;

Program make_metropolis(const MetropolisParams& p = {});

// B3: importance-sampling estimate of I(x) = int_0^1 exp(-x u^2) du.
enum class IsEstimator { importance, plain, antithetic, stratified, self_normalised, control_variate };

struct ImportanceParams {
    double lambda = 1.5;
    int base_samples = 1000;
    double normaliser_scale = 1.0;
    double exponent = 2.0;
    double upper = 1.0;
    double sample_offset = 0.0;
    double weight_offset = 0.0;
    bool pade_exp = false;
    bool linear_draw = false;   // u = v instead of the inverse CDF, weights kept
    IsEstimator estimator = IsEstimator::importance;
    bool reuse_samples = false;
    bool drop_last = false;
    bool fixed_stream = false;
};

inline constexpr int kIsEstimate = 0;
inline constexpr int kIsScaled = 1;     // integrand 2g
inline constexpr int kIsShifted = 2;    // integrand g + 1
inline constexpr int kIsConstant = 3;   // integrand 1

Program make_importance(const ImportanceParams& p = {});

}  // namespace semmut::kernels
